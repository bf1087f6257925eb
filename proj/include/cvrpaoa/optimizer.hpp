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
 * Derivative-free minimization by linear approximation on a simplex with a
 * shrinking trust radius (unconstrained COBYLA), plus seeded multi-start.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cvrpaoa {

using Objective = std::function<double(std::span<const double>)>;

struct CobylaConfig {
    double rho_begin = 0.5;
    double rho_end = 1e-4;
    /// Maximum objective evaluations for one local run.
    int max_evaluations = 200;
};

struct LocalResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    /// Objective value of every evaluation, in order.
    std::vector<double> trace;
    /// Final trust radius.
    double rho = 0.0;
};

[[nodiscard]] LocalResult cobyla_minimize(const Objective &f,
                                          std::span<const double> x0,
                                          const CobylaConfig &cfg);

struct MultiStartConfig {
    int starts = 20;
    int budget = 200;
    std::uint64_t seed = 0;
    double lower = 0.0;
    /// Upper end of the uniform range for starting points (exclusive).
    double upper = 6.283185307179586;
    double rho_begin = 0.5;
    double rho_end = 1e-4;
};

struct OptimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int best_start = 0;
    int evaluations = 0;
    /// Evaluation trace of the winning start.
    std::vector<double> trace;
    /// Best value reached by each start.
    std::vector<double> start_values;
    std::vector<std::vector<double>> start_points;
};

/// Best of `starts` local runs from seeded uniform points. Start k draws its
/// point from derive_seed(seed, k), so the result does not depend on the
/// order in which starts run.
[[nodiscard]] OptimizeResult optimize(const Objective &f, int dim,
                                      const MultiStartConfig &cfg);

} // namespace cvrpaoa
