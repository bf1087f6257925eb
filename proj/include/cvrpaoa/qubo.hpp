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
 * Penalty-QUBO QAOA baseline: vehicle-tagged time-step bits z_{t,i,k},
 * binary slack per vehicle, Hadamard start and X mixer.
 */
#pragma once

#include "cvrpaoa/cvrp.hpp"
#include "cvrpaoa/optimizer.hpp"
#include "cvrpaoa/result.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cvrpaoa {

inline constexpr int kMaxQuboQubits = 24;

struct QuboLayout {
    int n = 0;
    /// ceil(sum q / Q).
    int vehicles = 0;
    /// ceil(log2(Q + 1)) bits of slack per vehicle.
    int slack_width = 0;
    int z_bits = 0;
    int total = 0;

    static QuboLayout make(const Instance &inst);

    [[nodiscard]] int z(int t, int i, int k) const {
        return ((t - 1) * n + (i - 1)) * vehicles + (k - 1);
    }
    [[nodiscard]] int slack(int k, int bit) const {
        return z_bits + (k - 1) * slack_width + bit;
    }
};

struct PenaltyConfig {
    double visit = 1.0;
    double step = 1.0;
    double capacity = 1.0;

    /// Every multiplier set to 2 * N * max(w).
    static PenaltyConfig defaults(const Instance &inst);
};

struct PenaltyTerms {
    double route = 0.0;
    double visit = 0.0;
    double step = 0.0;
    double capacity = 0.0;
};

/// Unweighted parts of the penalized objective for one bit pattern.
[[nodiscard]] PenaltyTerms penalty_terms(std::uint64_t label,
                                         const QuboLayout &layout,
                                         const Instance &inst);
[[nodiscard]] double penalty_cost(std::uint64_t label, const QuboLayout &layout,
                                  const Instance &inst, const PenaltyConfig &cfg);
/// Bit-vector form; throws ValidationError on a width mismatch.
[[nodiscard]] double penalty_cost(std::span<const std::uint8_t> bits,
                                  const Instance &inst, const PenaltyConfig &cfg);

/// The route set of a pattern whose z bits place every customer once, one
/// customer per time step, within capacity on every vehicle. Slack bits are
/// ignored. Empty when the z bits are not such a plan.
[[nodiscard]] std::optional<Solution> qubo_plan(std::uint64_t label,
                                                const QuboLayout &layout,
                                                const Instance &inst);

struct QuboConfig {
    PenaltyConfig penalty;
    int p = 1;
    MultiStartConfig optimizer;
    /// Distribution entries kept besides the feasible strings.
    double distribution_threshold = 1e-4;
};

/// Optimizes and measures the baseline. p = 0 evaluates the Hadamard start.
/// Throws ResourceError when the layout exceeds kMaxQuboQubits.
[[nodiscard]] RunResult run_qubo_qaoa(const Instance &inst, const QuboConfig &cfg);

} // namespace cvrpaoa
