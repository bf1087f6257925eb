// Copyright 2026 The cvrpaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cvrpaoa/optimizer.hpp"

#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cvrpaoa {

namespace {

// Simplex acceptability bounds and radius reduction, as multiples of rho.
constexpr double kMinSigma = 0.25;
constexpr double kMaxEdge = 2.1;
constexpr double kShrink = 0.5;
constexpr double kGoodRatio = 0.1;

class Local {
  public:
    Local(const Objective &f, const CobylaConfig &cfg, int n)
        : f_(f), cfg_(cfg), n_(n) {}

    double eval(const Eigen::VectorXd &x) {
        std::vector<double> v(x.data(), x.data() + x.size());
        const double y = f_(v);
        out_.trace.push_back(y);
        ++out_.evaluations;
        if (!std::isfinite(y)) {
            throw ValidationError("objective returned a non-finite value");
        }
        if (y < out_.f) {
            out_.f = y;
            out_.x = v;
        }
        return y;
    }

    bool exhausted() const { return out_.evaluations >= cfg_.max_evaluations; }

    LocalResult run(std::span<const double> x0) {
        out_.f = std::numeric_limits<double>::infinity();
        double rho = cfg_.rho_begin;
        Eigen::VectorXd base(n_);
        for (int k = 0; k < n_; ++k) {
            base[k] = x0[k];
        }
        std::vector<Eigen::VectorXd> v(n_ + 1, base);
        std::vector<double> fv(n_ + 1);
        fv[0] = eval(base);
        for (int j = 1; j <= n_ && !exhausted(); ++j) {
            v[j][j - 1] += rho;
            fv[j] = eval(v[j]);
        }
        if (exhausted()) {
            out_.rho = rho;
            return out_;
        }

        while (!exhausted()) {
            // Best vertex becomes the pivot.
            const int best = static_cast<int>(
                std::min_element(fv.begin(), fv.end()) - fv.begin());
            std::swap(v[0], v[best]);
            std::swap(fv[0], fv[best]);

            Eigen::MatrixXd diff(n_, n_);
            for (int j = 0; j < n_; ++j) {
                diff.row(j) = (v[j + 1] - v[0]).transpose();
            }
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(diff);
            Eigen::MatrixXd inv;
            bool acceptable = lu.isInvertible();
            int worst = -1;
            if (acceptable) {
                inv = lu.inverse();
                // Column j of inv is normal to the face opposite vertex j+1;
                // 1/|col| is that vertex's distance from the face.
                double worst_edge = kMaxEdge * rho;
                for (int j = 0; j < n_; ++j) {
                    const double edge = diff.row(j).norm();
                    if (edge > worst_edge) {
                        worst_edge = edge;
                        worst = j;
                    }
                }
                if (worst < 0) {
                    double worst_sigma = kMinSigma * rho;
                    for (int j = 0; j < n_; ++j) {
                        const double sigma = 1.0 / inv.col(j).norm();
                        if (sigma < worst_sigma) {
                            worst_sigma = sigma;
                            worst = j;
                        }
                    }
                }
                acceptable = worst < 0;
            } else {
                worst = 0;
            }

            Eigen::VectorXd fd(n_);
            for (int j = 0; j < n_; ++j) {
                fd[j] = fv[j + 1] - fv[0];
            }

            if (!acceptable) {
                // Geometry step: move the offending vertex to distance
                // kShrink*rho along the normal of its opposite face.
                Eigen::VectorXd dir;
                if (lu.isInvertible()) {
                    dir = inv.col(worst);
                } else {
                    dir = Eigen::VectorXd::Unit(n_, worst % n_);
                }
                dir /= dir.norm();
                if (lu.isInvertible()) {
                    const Eigen::VectorXd g = inv * fd;
                    if (g.dot(dir) > 0.0) {
                        dir = -dir;
                    }
                }
                v[worst + 1] = v[0] + kShrink * rho * dir;
                fv[worst + 1] = eval(v[worst + 1]);
                continue;
            }

            const Eigen::VectorXd g = inv * fd;
            const double gnorm = g.norm();
            bool reduce = gnorm <= 1e-15;
            if (!reduce) {
                const Eigen::VectorXd d = -rho * g / gnorm;
                const Eigen::VectorXd trial = v[0] + d;
                const double ft = eval(trial);
                const double predicted = rho * gnorm;
                const double actual = fv[0] - ft;
                // Replace the vertex whose removal keeps the simplex least
                // degenerate: the largest barycentric weight of d.
                const Eigen::VectorXd w = inv.transpose() * d;
                int j = 0;
                w.cwiseAbs().maxCoeff(&j);
                v[j + 1] = trial;
                fv[j + 1] = ft;
                reduce = actual < kGoodRatio * predicted;
            }
            if (reduce) {
                if (rho <= cfg_.rho_end) {
                    break;
                }
                rho = std::max(kShrink * rho, cfg_.rho_end);
            }
        }
        out_.rho = rho;
        return out_;
    }

  private:
    const Objective &f_;
    const CobylaConfig &cfg_;
    int n_;
    LocalResult out_;
};

} // namespace

LocalResult cobyla_minimize(const Objective &f, std::span<const double> x0,
                            const CobylaConfig &cfg) {
    if (x0.empty()) {
        throw ValidationError("cannot minimize over zero parameters");
    }
    if (cfg.max_evaluations < 1) {
        throw ValidationError("evaluation budget must be at least 1");
    }
    if (!(cfg.rho_begin > 0.0) || !(cfg.rho_end > 0.0) ||
        cfg.rho_end > cfg.rho_begin) {
        throw ValidationError("need 0 < rho_end <= rho_begin");
    }
    Local local(f, cfg, static_cast<int>(x0.size()));
    return local.run(x0);
}

OptimizeResult optimize(const Objective &f, int dim, const MultiStartConfig &cfg) {
    if (cfg.starts < 1 || cfg.budget < 1) {
        throw ValidationError("starts and budget must be at least 1");
    }
    if (dim < 1) {
        throw ValidationError("parameter dimension must be at least 1");
    }
    OptimizeResult best;
    best.f = std::numeric_limits<double>::infinity();
    CobylaConfig local_cfg;
    local_cfg.rho_begin = cfg.rho_begin;
    local_cfg.rho_end = cfg.rho_end;
    local_cfg.max_evaluations = cfg.budget;
    for (int s = 0; s < cfg.starts; ++s) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        std::vector<double> x0(static_cast<std::size_t>(dim));
        for (auto &v : x0) {
            v = rng.uniform(cfg.lower, cfg.upper);
        }
        LocalResult r = cobyla_minimize(f, x0, local_cfg);
        best.evaluations += r.evaluations;
        best.start_values.push_back(r.f);
        best.start_points.push_back(x0);
        if (r.f < best.f) {
            best.f = r.f;
            best.x = std::move(r.x);
            best.trace = std::move(r.trace);
            best.best_start = s;
        }
    }
    return best;
}

} // namespace cvrpaoa
