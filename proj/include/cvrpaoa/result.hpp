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
 * Run metrics and the result record shared by the AOA and QUBO pipelines.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cvrpaoa {

struct Metrics {
    /// E / C* - 1.
    double alpha = 0.0;
    /// Probability mass on strings decoding to an optimal-cost solution.
    double r_opt = 0.0;
    /// Probability mass on feasible strings.
    double r_feas = 0.0;
};

/// Throws ValidationError when oracle_cost is not positive.
[[nodiscard]] double optimality_gap(double expectation, double oracle_cost);

struct RunResult {
    std::string instance;
    std::string method;
    std::string mixer;
    std::string backend;
    int p = 0;
    std::vector<double> gamma;
    std::vector<double> beta;
    Metrics metrics;
    double expectation = 0.0;
    double oracle_cost = 0.0;
    std::map<std::string, double> distribution;
    std::vector<double> trace;
    std::uint64_t seed = 0;
    int starts = 0;
    int budget = 0;
    int evaluations = 0;
    double wall_seconds = 0.0;
};

[[nodiscard]] std::string to_json(const RunResult &r, int indent = 2);
[[nodiscard]] RunResult result_from_json(const std::string &text);

} // namespace cvrpaoa
