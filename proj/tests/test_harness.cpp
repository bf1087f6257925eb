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
#include "cvrpaoa/encoding.hpp"
#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/harness.hpp"
#include "cvrpaoa/qubo.hpp"
#include "cvrpaoa/subspace.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace cvrpaoa;

namespace {

std::map<std::string, double> uniform_dist(int n) {
    const FeasibleSet fs = enumerate_feasible(n);
    std::map<std::string, double> d;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        d[to_bitstring(fs.at(k))] = 1.0 / static_cast<double>(fs.size());
    }
    return d;
}

} // namespace

TEST_CASE("builtin instances") {
    const auto names = builtin_names();
    CHECK(std::find(names.begin(), names.end(), "p1") != names.end());
    CHECK(builtin_instance("p1").num_customers() == 4);
    CHECK(builtin_instance("p2").capacity() == 4);
    CHECK(builtin_instance("p1-alt").demand(3) == 2);
    CHECK_THROWS_AS((void)builtin_instance("p9"), ValidationError);
}

TEST_CASE("metrics of the uniform state and of an optimal basis state") {
    const Instance inst = builtin_instance("p1");
    const auto costs = oracle::all_costs(inst);
    const double best = *std::min_element(costs.begin(), costs.end());
    const auto n_opt = std::count_if(costs.begin(), costs.end(),
                                     [&](double c) { return std::abs(c - best) < 1e-9; });
    const Metrics m = compute_metrics(uniform_dist(4), inst, best, oracle::mean(costs));
    CHECK(m.r_feas == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.r_opt == doctest::Approx(static_cast<double>(n_opt) / 192.0).epsilon(1e-12));
    CHECK(m.alpha == doctest::Approx(oracle::mean(costs) / best - 1.0).epsilon(1e-12));

    const FeasibleSet fs = enumerate_feasible(4);
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (std::abs(route_cost(fs.at(k), inst) - best) < 1e-9) {
            const Metrics one = compute_metrics({{to_bitstring(fs.at(k)), 1.0}}, inst, best, best);
            CHECK(one.alpha == doctest::Approx(0.0));
            CHECK(one.r_opt == 1.0);
            break;
        }
    }
    CHECK_THROWS_AS((void)compute_metrics({}, inst, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS((void)compute_metrics({{"01", 1.0}}, inst, best, best), ValidationError);
}

TEST_CASE("landscape scan") {
    const Instance inst = builtin_instance("p1");
    LandscapeSpec one;
    one.gamma_steps = 1;
    one.beta_steps = 1;
    const LandscapeGrid g1 = landscape_scan(inst, one);
    REQUIRE(g1.energy.size() == 1);
    CHECK(g1.energy[0] == doctest::Approx(oracle::mean(oracle::all_costs(inst))).epsilon(1e-12));

    LandscapeSpec spec;
    spec.gamma_steps = 8;
    spec.beta_steps = 6;
    const LandscapeGrid g = landscape_scan(inst, spec);
    CHECK(g.gammas.size() == 8);
    CHECK(g.betas.size() == 6);
    CHECK(g.energy.size() == 48);
    CHECK(g.gammas[1] == doctest::Approx(2 * std::numbers::pi / 8));
    for (std::size_t l = 1; l < g.betas.size(); ++l) {
        CHECK(g.energy[l] == doctest::Approx(g.energy[0]).epsilon(1e-12));
    }
    const std::string csv = g.to_csv();
    CHECK(csv.rfind("gamma,beta,energy\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 49);
    spec.p = 2;
    CHECK_THROWS_AS((void)landscape_scan(inst, spec), ValidationError);
}

TEST_CASE("aoa runs are feasible, consistent and reproducible") {
    const Instance inst = builtin_instance("p2");
    AoaConfig cfg;
    cfg.p = 2;
    cfg.mixer = Mixer::Ring;
    cfg.optimizer.starts = 2;
    cfg.optimizer.budget = 40;
    cfg.optimizer.seed = 5;
    const RunResult a = run_aoa(inst, cfg);
    const RunResult b = run_aoa(inst, cfg);
    CHECK(a.metrics.r_feas == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.expectation == doctest::Approx(a.oracle_cost * (1 + a.metrics.alpha)).epsilon(1e-12));
    CHECK(a.metrics.r_opt <= a.metrics.r_feas + 1e-12);
    CHECK(a.metrics.alpha >= -1e-9);
    CHECK(a.gamma == b.gamma);
    CHECK(a.beta == b.beta);
    CHECK(a.distribution == b.distribution);
    CHECK(a.trace == b.trace);
    CHECK(a.gamma.size() == 2);
    for (double b : a.beta) {
        CHECK(b >= 0.0);
        CHECK(b < 2 * std::numbers::pi);
    }
    CHECK(a.method == "aoa");
    CHECK(a.evaluations <= 80);
    CHECK(a.oracle_cost == doctest::Approx(exact_solve(inst).min_cost));

    cfg.p = 0;
    CHECK_THROWS_AS((void)run_aoa(inst, cfg), ValidationError);
}

TEST_CASE("gate and subspace evaluators agree at three customers") {
    GeneratorConfig g;
    g.count = 1;
    g.seed = 21;
    const Instance inst = generate_instances(g)[0];
    const AoaEvaluator dense(inst, Backend::Gate);
    const AoaEvaluator sub(inst, Backend::Subspace);
    const std::vector<double> gm{0.4, 1.7}, bt{2.2, 0.9};
    for (Mixer m : {Mixer::Grover, Mixer::Ring}) {
        CHECK(dense.energy(m, gm, bt) == doctest::Approx(sub.energy(m, gm, bt)).epsilon(1e-10));
        const AoaEvaluation a = dense.evaluate(m, gm, bt);
        const AoaEvaluation b = sub.evaluate(m, gm, bt);
        for (const auto &[k, v] : b.distribution) {
            CHECK(std::abs(a.distribution.at(k) - v) < 1e-8);
        }
    }
    CHECK_THROWS_AS(AoaEvaluator(builtin_instance("p1"), Backend::Gate), ResourceError);
}

TEST_CASE("result json round trip") {
    const Instance inst = builtin_instance("p1");
    AoaConfig cfg;
    cfg.optimizer.starts = 1;
    cfg.optimizer.budget = 10;
    const RunResult r = run_aoa(inst, cfg);
    const std::string text = to_json(r);
    const RunResult back = result_from_json(text);
    CHECK(back.instance == r.instance);
    CHECK(back.method == r.method);
    CHECK(back.p == r.p);
    CHECK(back.gamma == r.gamma);
    CHECK(back.beta == r.beta);
    CHECK(back.metrics.r_opt == r.metrics.r_opt);
    CHECK(back.distribution == r.distribution);
    CHECK(back.trace == r.trace);
    CHECK(back.seed == r.seed);
    CHECK(to_json(back) == text);
    for (const char *key : {"\"params\"", "\"metrics\"", "\"oracle_cost\"", "\"distribution\"",
                            "\"trace\"", "\"seed\""}) {
        CHECK(text.find(key) != std::string::npos);
    }
    CHECK_THROWS_AS((void)result_from_json("{}"), ValidationError);
}

TEST_CASE("experiment presets") {
    ExperimentOptions o;
    o.starts = 2;
    o.budget = 20;
    o.p3s_count = 3;
    o.p3s_max_depth = 2;
    const ExperimentReport rep = run_experiment("p3s", 7, o);
    CHECK(rep.runs.size() == 6);
    CHECK(rep.summary.size() == 6);
    CHECK(rep.summary[1].reference.has_value());
    CHECK_FALSE(rep.summary[4].reference.has_value());
    CHECK(rep.table().find("P3s mean p=2") != std::string::npos);
    CHECK(rep.to_json().find("\"preset\"") != std::string::npos);
    CHECK_THROWS_AS((void)run_experiment("nope", 1, o), ValidationError);

    const auto pn = preset_names();
    CHECK(pn.size() == 5);
    for (const auto &inst : qubo_compare_instances(7, 4)) {
        CHECK(QuboLayout::make(inst).total <= kMaxQuboQubits);
        CHECK(inst.num_customers() == 3);
    }
}
