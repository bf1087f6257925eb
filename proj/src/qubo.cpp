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
#include "cvrpaoa/qubo.hpp"

#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/statevector.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace cvrpaoa {

QuboLayout QuboLayout::make(const Instance &inst) {
    QuboLayout l;
    l.n = inst.num_customers();
    const int q = inst.capacity();
    l.vehicles = (inst.total_demand() + q - 1) / q;
    l.slack_width = static_cast<int>(std::bit_width(static_cast<unsigned>(q)));
    l.z_bits = l.n * l.n * l.vehicles;
    l.total = l.z_bits + l.vehicles * l.slack_width;
    return l;
}

PenaltyConfig PenaltyConfig::defaults(const Instance &inst) {
    const double m = 2.0 * inst.num_customers() * inst.distance().max_entry();
    return PenaltyConfig{m, m, m};
}

namespace {

inline bool bit(std::uint64_t label, int index) {
    return ((label >> index) & 1U) != 0;
}

double square(double v) { return v * v; }

} // namespace

PenaltyTerms penalty_terms(std::uint64_t label, const QuboLayout &l,
                           const Instance &inst) {
    if (l.total > 63) {
        throw ResourceError("QUBO layout wider than 63 bits");
    }
    const int n = l.n;
    const auto &w = inst.distance();
    PenaltyTerms out;

    std::vector<int> last(static_cast<std::size_t>(l.vehicles) + 1, 0);
    for (int t = 1; t <= n; ++t) {
        int ones = 0;
        int who = 0;
        int veh = 0;
        for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= l.vehicles; ++k) {
                if (bit(label, l.z(t, i, k))) {
                    ++ones;
                    who = i;
                    veh = k;
                }
            }
        }
        out.step += square(ones - 1.0);
        if (ones == 1) {
            out.route += w(last[veh], who);
            last[veh] = who;
        }
    }
    for (int k = 1; k <= l.vehicles; ++k) {
        out.route += w(last[k], 0);
    }
    for (int i = 1; i <= n; ++i) {
        int ones = 0;
        for (int t = 1; t <= n; ++t) {
            for (int k = 1; k <= l.vehicles; ++k) {
                ones += bit(label, l.z(t, i, k));
            }
        }
        out.visit += square(ones - 1.0);
    }
    for (int k = 1; k <= l.vehicles; ++k) {
        double load = 0.0;
        for (int t = 1; t <= n; ++t) {
            for (int i = 1; i <= n; ++i) {
                if (bit(label, l.z(t, i, k))) {
                    load += inst.demand(i);
                }
            }
        }
        double slack = 0.0;
        for (int b = 0; b < l.slack_width; ++b) {
            if (bit(label, l.slack(k, b))) {
                slack += std::ldexp(1.0, b);
            }
        }
        out.capacity += square(load + slack - inst.capacity());
    }
    return out;
}

double penalty_cost(std::uint64_t label, const QuboLayout &layout,
                    const Instance &inst, const PenaltyConfig &cfg) {
    const PenaltyTerms t = penalty_terms(label, layout, inst);
    return t.route + cfg.visit * t.visit + cfg.step * t.step +
           cfg.capacity * t.capacity;
}

double penalty_cost(std::span<const std::uint8_t> bits, const Instance &inst,
                    const PenaltyConfig &cfg) {
    const QuboLayout l = QuboLayout::make(inst);
    if (static_cast<int>(bits.size()) != l.total) {
        throw ValidationError("bit vector has " + std::to_string(bits.size()) +
                              " entries, layout needs " + std::to_string(l.total));
    }
    if (l.total > 63) {
        throw ResourceError("QUBO layout wider than 63 bits");
    }
    std::uint64_t label = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] > 1) {
            throw ValidationError("bits must be 0 or 1");
        }
        label |= static_cast<std::uint64_t>(bits[k]) << k;
    }
    return penalty_cost(label, l, inst, cfg);
}

std::optional<Solution> qubo_plan(std::uint64_t label, const QuboLayout &l,
                                  const Instance &inst) {
    const int n = l.n;
    std::vector<int> at_step(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> veh_of(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int t = 1; t <= n; ++t) {
        int ones = 0;
        for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= l.vehicles; ++k) {
                if (bit(label, l.z(t, i, k))) {
                    ++ones;
                    at_step[t] = i;
                    veh_of[t] = k;
                }
            }
        }
        if (ones != 1 || seen[at_step[t]]++ != 0) {
            return std::nullopt;
        }
    }
    std::vector<Route> routes;
    for (int k = 1; k <= l.vehicles; ++k) {
        Route r;
        int load = 0;
        for (int t = 1; t <= n; ++t) {
            if (veh_of[t] == k) {
                r.push_back(at_step[t]);
                load += inst.demand(at_step[t]);
            }
        }
        if (load > inst.capacity()) {
            return std::nullopt;
        }
        if (!r.empty()) {
            routes.push_back(std::move(r));
        }
    }
    return Solution::from_routes(routes);
}

namespace {

// The objective splits as A(z) + mu * sum_k (L_k(z) + s_k - Q)^2, so phases
// and expectations only need per-z tables and a small (load, slack) table.
class QuboSimulator {
  public:
    QuboSimulator(const Instance &inst, const PenaltyConfig &cfg, double optimum)
        : layout_(QuboLayout::make(inst)), mu_(cfg.capacity),
          capacity_(inst.capacity()) {
        if (layout_.total > kMaxQuboQubits) {
            throw ResourceError(
                "QUBO layout for '" + inst.name() + "' needs " +
                std::to_string(layout_.total) + " qubits; the dense baseline is "
                "limited to " + std::to_string(kMaxQuboQubits));
        }
        const int nv = layout_.vehicles;
        const std::uint64_t zdim = std::uint64_t{1} << layout_.z_bits;
        zcost_.resize(zdim);
        loads_.resize(zdim * static_cast<std::size_t>(nv));
        kind_.assign(zdim, 0);
        for (std::uint64_t z = 0; z < zdim; ++z) {
            const PenaltyTerms t = penalty_terms(z, layout_, inst);
            zcost_[z] = t.route + cfg.visit * t.visit + cfg.step * t.step;
            for (int k = 1; k <= nv; ++k) {
                int load = 0;
                for (int tt = 1; tt <= layout_.n; ++tt) {
                    for (int i = 1; i <= layout_.n; ++i) {
                        if (bit(z, layout_.z(tt, i, k))) {
                            load += inst.demand(i);
                        }
                    }
                }
                loads_[z * nv + (k - 1)] = load;
                max_load_ = std::max(max_load_, load);
            }
            if (const auto plan = qubo_plan(z, layout_, inst)) {
                const double c = solution_cost(*plan, inst.distance());
                kind_[z] = same_cost(c, optimum) ? 2 : 1;
            }
        }
        const int slacks = 1 << layout_.slack_width;
        cap_.resize(static_cast<std::size_t>(max_load_ + 1) * slacks);
        for (int load = 0; load <= max_load_; ++load) {
            for (int sv = 0; sv < slacks; ++sv) {
                cap_[load * slacks + sv] =
                    mu_ * square(load + sv - static_cast<double>(capacity_));
            }
        }
    }

    const QuboLayout &layout() const { return layout_; }
    std::size_t dimension() const { return std::size_t{1} << layout_.total; }

    /// Slack value of vehicle k (0-based) in slack index `s`.
    int slack_of(std::uint64_t s, int k) const {
        return static_cast<int>((s >> (k * layout_.slack_width)) &
                                ((1U << layout_.slack_width) - 1));
    }

    std::vector<Complex> state(std::span<const double> gammas,
                               std::span<const double> betas) const {
        const std::size_t dim = dimension();
        const std::size_t zdim = zcost_.size();
        const std::size_t sdim = dim / zdim;
        const int nv = layout_.vehicles;
        const int slacks = 1 << layout_.slack_width;
        std::vector<Complex> amp(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
        std::vector<Complex> zphase(zdim);
        std::vector<Complex> cphase(cap_.size());
        for (std::size_t j = 0; j < gammas.size(); ++j) {
            const double g = gammas[j];
            for (std::size_t z = 0; z < zdim; ++z) {
                zphase[z] = std::polar(1.0, -g * zcost_[z]);
            }
            for (std::size_t c = 0; c < cap_.size(); ++c) {
                cphase[c] = std::polar(1.0, -g * cap_[c]);
            }
            // Per slack value, the capacity phase of vehicle k indexed by load.
            std::vector<Complex> by_load(static_cast<std::size_t>(nv) * (max_load_ + 1));
            for (std::size_t s = 0; s < sdim; ++s) {
                for (int k = 0; k < nv; ++k) {
                    for (int load = 0; load <= max_load_; ++load) {
                        by_load[k * (max_load_ + 1) + load] =
                            cphase[load * slacks + slack_of(s, k)];
                    }
                }
                Complex *row = amp.data() + s * zdim;
                const int *ld = loads_.data();
                for (std::size_t z = 0; z < zdim; ++z, ld += nv) {
                    Complex ph = zphase[z];
                    for (int k = 0; k < nv; ++k) {
                        ph *= by_load[k * (max_load_ + 1) + ld[k]];
                    }
                    row[z] *= ph;
                }
            }
            apply_rx_all(amp, layout_.total, 2.0 * betas[j]);
        }
        return amp;
    }

    double expectation(std::span<const Complex> amp) const {
        const std::size_t zdim = zcost_.size();
        const std::size_t sdim = amp.size() / zdim;
        const int nv = layout_.vehicles;
        const int slacks = 1 << layout_.slack_width;
        std::vector<double> by_load(static_cast<std::size_t>(nv) * (max_load_ + 1));
        double e = 0.0;
        for (std::size_t s = 0; s < sdim; ++s) {
            for (int k = 0; k < nv; ++k) {
                for (int load = 0; load <= max_load_; ++load) {
                    by_load[k * (max_load_ + 1) + load] =
                        cap_[load * slacks + slack_of(s, k)];
                }
            }
            const Complex *row = amp.data() + s * zdim;
            const int *ld = loads_.data();
            for (std::size_t z = 0; z < zdim; ++z, ld += nv) {
                double c = zcost_[z];
                for (int k = 0; k < nv; ++k) {
                    c += by_load[k * (max_load_ + 1) + ld[k]];
                }
                e += std::norm(row[z]) * c;
            }
        }
        return e;
    }

    std::uint8_t kind(std::uint64_t label) const {
        return kind_[label & ((std::uint64_t{1} << layout_.z_bits) - 1)];
    }

  private:
    QuboLayout layout_;
    double mu_;
    int capacity_;
    int max_load_ = 0;
    /// Route cost plus weighted visit and step penalties, per z.
    std::vector<double> zcost_;
    std::vector<int> loads_;
    /// mu * (load + slack - Q)^2 indexed [load][slack].
    std::vector<double> cap_;
    /// 0 infeasible, 1 feasible, 2 feasible and optimal.
    std::vector<std::uint8_t> kind_;
};

std::string label_text(std::uint64_t s, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; ++k) {
        if ((s >> k) & 1U) {
            out[static_cast<std::size_t>(width - 1 - k)] = '1';
        }
    }
    return out;
}

} // namespace

RunResult run_qubo_qaoa(const Instance &inst, const QuboConfig &cfg) {
    if (cfg.p < 0) {
        throw ValidationError("depth must be non-negative");
    }
    const auto start = std::chrono::steady_clock::now();
    const QuboLayout layout = QuboLayout::make(inst);
    if (layout.total > kMaxQuboQubits) {
        throw ResourceError("QUBO layout for '" + inst.name() + "' needs " +
                            std::to_string(layout.total) +
                            " qubits; the dense baseline is limited to " +
                            std::to_string(kMaxQuboQubits));
    }
    const ExactResult oracle = exact_solve(inst);
    const QuboSimulator sim(inst, cfg.penalty, oracle.min_cost);

    RunResult r;
    r.instance = inst.name();
    r.method = "qubo-qaoa";
    r.backend = "dense";
    r.p = cfg.p;
    r.seed = cfg.optimizer.seed;
    r.oracle_cost = oracle.min_cost;

    std::vector<double> x;
    if (cfg.p > 0) {
        const auto p = static_cast<std::size_t>(cfg.p);
        const Objective f = [&](std::span<const double> v) {
            const auto amp = sim.state(v.subspan(0, p), v.subspan(p, p));
            return sim.expectation(amp);
        };
        const OptimizeResult o = optimize(f, 2 * cfg.p, cfg.optimizer);
        x = o.x;
        r.trace = o.trace;
        r.starts = cfg.optimizer.starts;
        r.budget = cfg.optimizer.budget;
        r.evaluations = o.evaluations;
        r.gamma.assign(x.begin(), x.begin() + cfg.p);
        r.beta.assign(x.begin() + cfg.p, x.end());
    }
    const auto amp = sim.state(r.gamma, r.beta);
    r.expectation = sim.expectation(amp);
    r.metrics.alpha = optimality_gap(r.expectation, oracle.min_cost);
    for (std::size_t s = 0; s < amp.size(); ++s) {
        const double pr = std::norm(amp[s]);
        const std::uint8_t k = sim.kind(s);
        if (k != 0) {
            r.metrics.r_feas += pr;
            if (k == 2) {
                r.metrics.r_opt += pr;
            }
        }
        if (k != 0 || pr >= cfg.distribution_threshold) {
            r.distribution.emplace(label_text(s, layout.total), pr);
        }
    }
    r.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return r;
}

} // namespace cvrpaoa
