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
#include "cvrpaoa/harness.hpp"

#include "cvrpaoa/encoding.hpp"
#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/statevector.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cvrpaoa {

namespace {

std::vector<Customer> customers(std::initializer_list<std::array<double, 3>> rows) {
    std::vector<Customer> out;
    for (const auto &r : rows) {
        out.push_back(Customer{Point{r[0], r[1]}, static_cast<int>(r[2])});
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

Instance builtin_instance(std::string_view name) {
    if (name == "p1") {
        return Instance("P1", 3, Point{0.66, 0.41},
                        customers({{0.67, 0.23, 1},
                                   {0.81, 0.64, 2},
                                   {0.17, 0.26, 1},
                                   {0.92, 0.46, 2}}));
    }
    if (name == "p1-alt") {
        return Instance("P1-caption-demands", 3, Point{0.66, 0.41},
                        customers({{0.67, 0.23, 1},
                                   {0.81, 0.64, 2},
                                   {0.17, 0.26, 2},
                                   {0.92, 0.46, 1}}));
    }
    if (name == "p2") {
        return Instance("P2", 4, Point{0.05, 0.68},
                        customers({{0.80, 0.80, 1},
                                   {0.97, 0.44, 3},
                                   {0.83, 0.25, 1},
                                   {0.05, 0.49, 2}}));
    }
    throw ValidationError("unknown builtin instance '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"p1", "p2", "p1-alt"}; }

Metrics compute_metrics(const std::map<std::string, double> &dist,
                        const Instance &inst, double oracle_cost,
                        double expectation) {
    Metrics m;
    m.alpha = optimality_gap(expectation, oracle_cost);
    const int n = inst.num_customers();
    const auto width = static_cast<std::size_t>(bit_layout(n).width());
    for (const auto &[key, p] : dist) {
        if (key.size() != width) {
            throw ValidationError("distribution key '" + key +
                                  "' does not match the decision width");
        }
        const Bits bits = from_bitstring(key);
        if (!is_feasible_bits(bits, n)) {
            continue;
        }
        m.r_feas += p;
        if (same_cost(route_cost(encoding_from_bits(bits, n), inst), oracle_cost)) {
            m.r_opt += p;
        }
    }
    return m;
}

struct AoaEvaluator::Gate {
    explicit Gate(const Instance &inst)
        : builder(inst), diagonal(cost_diagonal(inst)),
          targets(cost_diagonal_targets(builder.layout())) {}

    AnsatzBuilder builder;
    std::shared_ptr<const DiagonalFunction> diagonal;
    std::vector<Qubit> targets;

    DenseState run(Mixer m, std::span<const double> g,
                   std::span<const double> b) const {
        DenseState s(builder.layout().total);
        s.apply(builder.ansatz(m, g, b));
        return s;
    }

    /// <psi| U_E^dag H U_E |psi> with H the (x, a) cost diagonal.
    double energy(const DenseState &final_state) const {
        DenseState s = final_state;
        s.apply(builder.encoder());
        const auto amps = s.amplitudes();
        double e = 0.0;
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            const double p = std::norm(amps[i]);
            if (p == 0.0) {
                continue;
            }
            std::uint64_t sub = 0;
            for (std::size_t k = 0; k < targets.size(); ++k) {
                sub |= ((i >> targets[k]) & 1U) << k;
            }
            e += p * (*diagonal)(sub);
        }
        return e;
    }
};

AoaEvaluator::AoaEvaluator(const Instance &inst, Backend backend)
    : inst_(inst), backend_(backend), oracle_cost_(exact_solve(inst).min_cost) {
    if (inst.num_customers() < 2) {
        throw ValidationError("AOA runs need at least two customers");
    }
    if (backend == Backend::Subspace) {
        subspace_ = std::make_unique<SubspaceModel>(inst);
    } else {
        const auto layout = RegisterLayout::make(inst);
        if (layout.total > kMaxDenseQubits) {
            throw ResourceError("gate backend needs " + std::to_string(layout.total) +
                                " qubits for '" + inst.name() + "'; the dense limit is " +
                                std::to_string(kMaxDenseQubits) +
                                " (use --backend subspace)");
        }
        gate_ = std::make_unique<Gate>(inst);
    }
}

AoaEvaluator::~AoaEvaluator() = default;

double AoaEvaluator::energy(Mixer m, std::span<const double> gammas,
                            std::span<const double> betas) const {
    if (subspace_) {
        return run_subspace(*subspace_, m, gammas, betas).expectation();
    }
    return gate_->energy(gate_->run(m, gammas, betas));
}

AoaEvaluation AoaEvaluator::evaluate(Mixer m, std::span<const double> gammas,
                                     std::span<const double> betas) const {
    AoaEvaluation out;
    if (subspace_) {
        const SubspaceState s = run_subspace(*subspace_, m, gammas, betas);
        out.expectation = s.expectation();
        out.distribution = s.distribution();
    } else {
        const DenseState s = gate_->run(m, gammas, betas);
        out.expectation = gate_->energy(s);
        const auto q = gate_->builder.layout().decision_qubits();
        out.distribution = probabilities(s, q);
    }
    out.metrics = compute_metrics(out.distribution, inst_, oracle_cost_,
                                  out.expectation);
    return out;
}

RunResult run_aoa(const AoaEvaluator &eval, const AoaConfig &cfg) {
    if (cfg.p < 1) {
        throw ValidationError("AOA depth must be at least 1");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = static_cast<std::size_t>(cfg.p);
    const Objective f = [&](std::span<const double> v) {
        return eval.energy(cfg.mixer, v.subspan(0, p), v.subspan(p, p));
    };
    const OptimizeResult o = optimize(f, 2 * cfg.p, cfg.optimizer);

    RunResult r;
    r.instance = eval.instance().name();
    r.method = "aoa";
    r.mixer = mixer_name(cfg.mixer);
    r.backend = backend_name(eval.backend());
    r.p = cfg.p;
    r.gamma.assign(o.x.begin(), o.x.begin() + cfg.p);
    // Both mixers are 2*pi-periodic in beta, so report it in [0, 2*pi).
    for (double b : std::span(o.x).subspan(p)) {
        r.beta.push_back(b - 2 * std::numbers::pi * std::floor(b / (2 * std::numbers::pi)));
    }
    const AoaEvaluation e = eval.evaluate(cfg.mixer, r.gamma, r.beta);
    r.metrics = e.metrics;
    r.expectation = e.expectation;
    r.oracle_cost = eval.oracle_cost();
    r.distribution = e.distribution;
    r.trace = o.trace;
    r.seed = cfg.optimizer.seed;
    r.starts = cfg.optimizer.starts;
    r.budget = cfg.optimizer.budget;
    r.evaluations = o.evaluations;
    r.wall_seconds = seconds_since(t0);
    return r;
}

RunResult run_aoa(const Instance &inst, const AoaConfig &cfg) {
    const AoaEvaluator eval(inst, cfg.backend);
    return run_aoa(eval, cfg);
}

std::string LandscapeGrid::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "gamma,beta,energy\n";
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        for (std::size_t l = 0; l < betas.size(); ++l) {
            os << gammas[k] << ',' << betas[l] << ','
               << energy[k * betas.size() + l] << '\n';
        }
    }
    return os.str();
}

LandscapeGrid landscape_scan(const Instance &inst, const LandscapeSpec &spec) {
    if (spec.p != 1) {
        throw ValidationError("landscape scans are defined for depth 1 only");
    }
    if (spec.gamma_steps < 1 || spec.beta_steps < 1) {
        throw ValidationError("grid needs at least one step per axis");
    }
    const SubspaceModel model(inst);
    LandscapeGrid g;
    for (int k = 0; k < spec.gamma_steps; ++k) {
        g.gammas.push_back(k * spec.gamma_max / spec.gamma_steps);
    }
    for (int l = 0; l < spec.beta_steps; ++l) {
        g.betas.push_back(l * spec.beta_max / spec.beta_steps);
    }
    g.energy.reserve(g.gammas.size() * g.betas.size());
    for (double gamma : g.gammas) {
        for (double beta : g.betas) {
            const double gv[1] = {gamma};
            const double bv[1] = {beta};
            g.energy.push_back(run_subspace(model, spec.mixer, gv, bv).expectation());
        }
    }
    return g;
}

std::string ExperimentReport::table() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-8s %14s %14s\n", "run", "metric",
                  "measured", "reference");
    os << "preset " << preset << " (seed " << seed << ")\n" << line;
    for (const auto &r : summary) {
        char reference[32] = "-";
        if (r.reference) {
            std::snprintf(reference, sizeof reference, "%.4g", *r.reference);
        }
        std::snprintf(line, sizeof line, "%-28s %-8s %14.6g %14s\n",
                      r.label.c_str(), r.metric.c_str(), r.measured, reference);
        os << line;
    }
    return os.str();
}

std::string ExperimentReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["preset"] = preset;
    j["seed"] = seed;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &r : summary) {
        nlohmann::ordered_json row;
        row["run"] = r.label;
        row["metric"] = r.metric;
        row["measured"] = r.measured;
        row["reference"] = r.reference ? nlohmann::ordered_json(*r.reference) : nullptr;
        rows.push_back(std::move(row));
    }
    j["summary"] = std::move(rows);
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto &r : runs) {
        items.push_back(nlohmann::ordered_json::parse(cvrpaoa::to_json(r, -1)));
    }
    j["runs"] = std::move(items);
    return j.dump(indent);
}

std::vector<std::string> preset_names() {
    return {"p1", "p2", "p2-depth2", "p3s", "qubo-compare"};
}

GeneratorConfig p3s_generator(std::uint64_t seed, int count) {
    GeneratorConfig g;
    g.customers = 3;
    g.count = count;
    g.capacity = 4;
    g.demand_lo = 1;
    g.demand_hi = 3;
    g.seed = seed;
    return g;
}

std::vector<Instance> qubo_compare_instances(std::uint64_t seed, int count) {
    std::vector<Instance> out;
    // Draw from the P3s stream until enough instances fit the guard.
    const auto pool = generate_instances(p3s_generator(seed, 4 * count + 48));
    for (const auto &inst : pool) {
        if (static_cast<int>(out.size()) == count) {
            break;
        }
        if (QuboLayout::make(inst).total <= kMaxQuboQubits) {
            out.push_back(inst);
        }
    }
    if (static_cast<int>(out.size()) < count) {
        throw ResourceError("not enough generated instances fit the QUBO guard");
    }
    return out;
}

namespace {

void add_rows(ExperimentReport &rep, const RunResult &r, const std::string &label,
              std::optional<double> alpha, std::optional<double> r_opt,
              std::optional<double> r_feas) {
    rep.summary.push_back({label, "alpha", r.metrics.alpha, alpha});
    rep.summary.push_back({label, "r_opt", r.metrics.r_opt, r_opt});
    rep.summary.push_back({label, "r_feas", r.metrics.r_feas, r_feas});
}

AoaConfig aoa_config(int p, std::uint64_t seed, const ExperimentOptions &o) {
    AoaConfig c;
    c.mixer = Mixer::Grover;
    c.backend = Backend::Subspace;
    c.p = p;
    c.optimizer.starts = o.starts;
    c.optimizer.budget = o.budget;
    c.optimizer.seed = seed;
    return c;
}

} // namespace

ExperimentReport run_experiment(std::string_view preset, std::uint64_t seed,
                                const ExperimentOptions &opts) {
    ExperimentReport rep;
    rep.preset = std::string(preset);
    rep.seed = seed;
    if (preset == "p1") {
        const RunResult r = run_aoa(builtin_instance("p1"), aoa_config(1, seed, opts));
        add_rows(rep, r, "P1 p=1", 1.27e-2, 0.597, 1.0);
        rep.runs.push_back(r);
    } else if (preset == "p2") {
        const RunResult r = run_aoa(builtin_instance("p2"), aoa_config(1, seed, opts));
        add_rows(rep, r, "P2 p=1", 1.04e-1, 0.241, 1.0);
        rep.runs.push_back(r);
    } else if (preset == "p2-depth2") {
        const RunResult r = run_aoa(builtin_instance("p2"), aoa_config(2, seed, opts));
        add_rows(rep, r, "P2 p=2", std::nullopt, 0.43, 1.0);
        rep.runs.push_back(r);
    } else if (preset == "p3s") {
        const auto insts = generate_instances(p3s_generator(seed, opts.p3s_count));
        std::vector<std::unique_ptr<AoaEvaluator>> evals;
        for (const auto &inst : insts) {
            evals.push_back(std::make_unique<AoaEvaluator>(inst, Backend::Subspace));
        }
        for (int p = 1; p <= opts.p3s_max_depth; ++p) {
            Metrics mean;
            for (const auto &e : evals) {
                const RunResult r = run_aoa(*e, aoa_config(p, seed, opts));
                mean.alpha += r.metrics.alpha;
                mean.r_opt += r.metrics.r_opt;
                mean.r_feas += r.metrics.r_feas;
                rep.runs.push_back(r);
            }
            const double k = static_cast<double>(evals.size());
            const std::string label = "P3s mean p=" + std::to_string(p);
            const bool ref = p == 1;
            rep.summary.push_back({label, "alpha", mean.alpha / k,
                                   ref ? std::optional<double>(3.91e-2) : std::nullopt});
            rep.summary.push_back({label, "r_opt", mean.r_opt / k,
                                   ref ? std::optional<double>(0.531) : std::nullopt});
            rep.summary.push_back({label, "r_feas", mean.r_feas / k,
                                   ref ? std::optional<double>(1.0) : std::nullopt});
        }
    } else if (preset == "qubo-compare") {
        const auto insts = qubo_compare_instances(seed, opts.qubo_instances);
        Metrics aoa;
        Metrics qubo;
        for (const auto &inst : insts) {
            const RunResult a = run_aoa(inst, aoa_config(1, seed, opts));
            QuboConfig qc;
            qc.penalty = PenaltyConfig::defaults(inst);
            qc.p = 1;
            qc.optimizer.starts = opts.qubo_starts;
            qc.optimizer.budget = opts.qubo_budget;
            qc.optimizer.seed = seed;
            const RunResult q = run_qubo_qaoa(inst, qc);
            aoa.alpha += a.metrics.alpha;
            aoa.r_opt += a.metrics.r_opt;
            aoa.r_feas += a.metrics.r_feas;
            qubo.alpha += q.metrics.alpha;
            qubo.r_opt += q.metrics.r_opt;
            qubo.r_feas += q.metrics.r_feas;
            rep.runs.push_back(a);
            rep.runs.push_back(q);
        }
        const double k = static_cast<double>(insts.size());
        rep.summary.push_back({"AOA mean p=1", "alpha", aoa.alpha / k, 3.91e-2});
        rep.summary.push_back({"AOA mean p=1", "r_opt", aoa.r_opt / k, 0.531});
        rep.summary.push_back({"AOA mean p=1", "r_feas", aoa.r_feas / k, 1.0});
        rep.summary.push_back({"QUBO mean p=1", "alpha", qubo.alpha / k, 8.50e2});
        rep.summary.push_back({"QUBO mean p=1", "r_opt", qubo.r_opt / k, 4.65e-6});
        rep.summary.push_back({"QUBO mean p=1", "r_feas", qubo.r_feas / k, 5.76e-4});
    } else {
        throw ValidationError("unknown preset '" + std::string(preset) +
                              "' (expected p1, p2, p2-depth2, p3s or qubo-compare)");
    }
    return rep;
}

} // namespace cvrpaoa
