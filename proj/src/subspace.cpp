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
#include "cvrpaoa/subspace.hpp"

#include "cvrpaoa/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cvrpaoa {

SubspaceModel::SubspaceModel(const Instance &inst)
    : n_(inst.num_customers()), set_(enumerate_feasible(inst.num_customers())) {
    if (n_ < 2) {
        throw ValidationError("the subspace simulator needs N >= 2");
    }
    const std::size_t dim = set_.size();
    costs_.resize(dim);
    bitstrings_.resize(dim);
    for (std::size_t f = 0; f < dim; ++f) {
        const Encoding enc = set_.at(f);
        costs_[f] = route_cost(enc, inst);
        bitstrings_[f] = to_bitstring(enc);
    }
    min_cost_ = *std::min_element(costs_.begin(), costs_.end());

    const std::size_t ny = set_.y_count();
    for (int i = 1; i <= n_; ++i) {
        const int j = i % n_ + 1;
        for (int u = 1; u <= n_; ++u) {
            for (int v = u + 1; v <= n_; ++v) {
                RingTerm term;
                for (std::size_t pr = 0; pr < set_.permutation_count(); ++pr) {
                    const auto &order = set_.permutation(pr);
                    const int si = order[i - 1];
                    const int sj = order[j - 1];
                    const int pattern = (si == u ? 1 : 0) | (sj == v ? 2 : 0) |
                                        (si == v ? 4 : 0) | (sj == u ? 8 : 0);
                    if (pattern == 12) {
                        continue;  // handled from its partner
                    }
                    if (pattern == 3) {
                        std::vector<int> swapped = order;
                        std::swap(swapped[i - 1], swapped[j - 1]);
                        const std::size_t partner =
                            FeasibleSet::permutation_rank(swapped);
                        for (std::size_t y = 0; y < ny; ++y) {
                            term.pairs.emplace_back(pr * ny + y, partner * ny + y);
                        }
                        continue;
                    }
                    if (pattern != 0) {
                        for (std::size_t y = 0; y < ny; ++y) {
                            term.fixed.emplace_back(pr * ny + y, pattern);
                        }
                    }
                }
                ring_.push_back(std::move(term));
            }
        }
    }
}

SubspaceState::SubspaceState(const SubspaceModel &model)
    : model_(&model),
      amp_(model.dimension(),
           Complex{1.0 / std::sqrt(static_cast<double>(model.dimension())), 0.0}) {}

SubspaceState init_uniform(const SubspaceModel &model) {
    return SubspaceState(model);
}

double SubspaceState::norm() const {
    double acc = 0.0;
    for (const auto &a : amp_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void SubspaceState::apply_phase(double gamma) {
    const auto costs = model_->costs();
    for (std::size_t f = 0; f < amp_.size(); ++f) {
        amp_[f] *= std::polar(1.0, -gamma * costs[f]);
    }
}

void SubspaceState::apply_grover(double beta) {
    Complex sum{0.0, 0.0};
    for (const auto &a : amp_) {
        sum += a;
    }
    const Complex shift =
        (1.0 - std::polar(1.0, -beta)) * sum / static_cast<double>(amp_.size());
    for (auto &a : amp_) {
        a -= shift;
    }
}

void SubspaceState::apply_ring(double beta) {
    const Matrix16 m = ring_term_unitary(beta);
    const Complex m33 = m[3 * 16 + 3];
    const Complex m3c = m[3 * 16 + 12];
    const Complex mc3 = m[12 * 16 + 3];
    const Complex mcc = m[12 * 16 + 12];
    for (const auto &term : model_->ring_terms()) {
        for (const auto &[f, g] : term.pairs) {
            const Complex a = amp_[f];
            const Complex b = amp_[g];
            amp_[f] = m33 * a + m3c * b;
            amp_[g] = mc3 * a + mcc * b;
        }
        for (const auto &[f, pattern] : term.fixed) {
            amp_[f] *= m[pattern * 16 + pattern];
        }
    }
    const Complex c{std::cos(beta), 0.0};
    const Complex s{0.0, -std::sin(beta)};
    const int n = model_->n();
    for (int t = 2; t <= n; ++t) {
        const std::size_t bit = std::size_t{1} << (n - t);
        for (std::size_t f = 0; f < amp_.size(); ++f) {
            if (f & bit) {
                continue;
            }
            const Complex a0 = amp_[f];
            const Complex a1 = amp_[f | bit];
            amp_[f] = c * a0 + s * a1;
            amp_[f | bit] = s * a0 + c * a1;
        }
    }
}

void SubspaceState::apply_mixer(Mixer m, double beta) {
    if (m == Mixer::Grover) {
        apply_grover(beta);
    } else {
        apply_ring(beta);
    }
}

double SubspaceState::expectation() const {
    const auto costs = model_->costs();
    double e = 0.0;
    for (std::size_t f = 0; f < amp_.size(); ++f) {
        e += std::norm(amp_[f]) * costs[f];
    }
    return e;
}

std::vector<double> SubspaceState::probabilities() const {
    std::vector<double> p(amp_.size());
    for (std::size_t f = 0; f < amp_.size(); ++f) {
        p[f] = std::norm(amp_[f]);
    }
    return p;
}

std::map<std::string, double> SubspaceState::distribution(double threshold) const {
    std::map<std::string, double> out;
    for (std::size_t f = 0; f < amp_.size(); ++f) {
        const double p = std::norm(amp_[f]);
        if (p > threshold) {
            out.emplace(model_->bitstring(f), p);
        }
    }
    return out;
}

SubspaceState run_subspace(const SubspaceModel &model, Mixer m,
                           std::span<const double> gammas,
                           std::span<const double> betas) {
    if (gammas.size() != betas.size()) {
        throw ValidationError("gamma and beta vectors differ in length");
    }
    SubspaceState s(model);
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        s.apply_phase(gammas[j]);
        s.apply_mixer(m, betas[j]);
    }
    return s;
}

} // namespace cvrpaoa
