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
/**
 * @file
 * AOA runs on either backend, metrics, landscape scans and the experiment
 * presets.
 */
#pragma once

#include "cvrpaoa/ansatz.hpp"
#include "cvrpaoa/cvrp.hpp"
#include "cvrpaoa/optimizer.hpp"
#include "cvrpaoa/qubo.hpp"
#include "cvrpaoa/result.hpp"
#include "cvrpaoa/subspace.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvrpaoa {

/// Bundled instances: "p1", "p2" and "p1-alt" (P1 with the demand vector
/// printed in the figure caption).
[[nodiscard]] Instance builtin_instance(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_names();

/// Metrics of a decision-register distribution. Keys are decision
/// bitstrings; strings that are not permutation encodings count as
/// infeasible.
[[nodiscard]] Metrics compute_metrics(const std::map<std::string, double> &dist,
                                      const Instance &inst, double oracle_cost,
                                      double expectation);

struct AoaEvaluation {
    double expectation = 0.0;
    std::map<std::string, double> distribution;
    Metrics metrics;
};

/// Holds the per-instance simulation tables for one backend.
class AoaEvaluator {
  public:
    AoaEvaluator(const Instance &inst, Backend backend);
    ~AoaEvaluator();
    AoaEvaluator(const AoaEvaluator &) = delete;
    AoaEvaluator &operator=(const AoaEvaluator &) = delete;

    [[nodiscard]] const Instance &instance() const { return inst_; }
    [[nodiscard]] Backend backend() const { return backend_; }
    [[nodiscard]] double oracle_cost() const { return oracle_cost_; }

    /// E_p(gamma, beta).
    [[nodiscard]] double energy(Mixer m, std::span<const double> gammas,
                                std::span<const double> betas) const;
    [[nodiscard]] AoaEvaluation evaluate(Mixer m, std::span<const double> gammas,
                                         std::span<const double> betas) const;

  private:
    struct Gate;
    Instance inst_;
    Backend backend_;
    double oracle_cost_;
    std::unique_ptr<SubspaceModel> subspace_;
    std::unique_ptr<Gate> gate_;
};

struct AoaConfig {
    Mixer mixer = Mixer::Grover;
    Backend backend = Backend::Subspace;
    int p = 1;
    MultiStartConfig optimizer;
};

[[nodiscard]] RunResult run_aoa(const Instance &inst, const AoaConfig &cfg);
[[nodiscard]] RunResult run_aoa(const AoaEvaluator &eval, const AoaConfig &cfg);

struct LandscapeSpec {
    Mixer mixer = Mixer::Grover;
    int gamma_steps = 64;
    int beta_steps = 64;
    double gamma_max = 6.283185307179586;
    double beta_max = 6.283185307179586;
    int p = 1;
};

struct LandscapeGrid {
    /// gamma_k = k * gamma_max / gamma_steps, likewise for beta.
    std::vector<double> gammas;
    std::vector<double> betas;
    /// energy[k * betas.size() + l] = E_1(gammas[k], betas[l]).
    std::vector<double> energy;

    [[nodiscard]] std::string to_csv() const;
};

/// Depth-1 energy grid on the subspace backend.
[[nodiscard]] LandscapeGrid landscape_scan(const Instance &inst,
                                           const LandscapeSpec &spec);

struct ExperimentOptions {
    int starts = 20;
    int budget = 200;
    /// The 24-qubit dense baseline costs about half a second per
    /// evaluation, so its optimizer runs on a smaller budget.
    int qubo_starts = 2;
    int qubo_budget = 40;
    int qubo_instances = 10;
    int p3s_count = 48;
    int p3s_max_depth = 5;
};

struct SummaryRow {
    std::string label;
    std::string metric;
    double measured = 0.0;
    std::optional<double> reference;
};

struct ExperimentReport {
    std::string preset;
    std::uint64_t seed = 0;
    std::vector<RunResult> runs;
    std::vector<SummaryRow> summary;

    [[nodiscard]] std::string table() const;
    [[nodiscard]] std::string to_json(int indent = 2) const;
};

[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] ExperimentReport run_experiment(std::string_view preset,
                                              std::uint64_t seed,
                                              const ExperimentOptions &opts = {});

/// The P3s generator settings: 3 customers, Q = 4, demands in [1, 3].
[[nodiscard]] GeneratorConfig p3s_generator(std::uint64_t seed, int count);
/// First `count` P3s instances whose QUBO layout fits the dense guard.
[[nodiscard]] std::vector<Instance> qubo_compare_instances(std::uint64_t seed,
                                                           int count);

} // namespace cvrpaoa
