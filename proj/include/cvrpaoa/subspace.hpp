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
 * Exact simulation restricted to the feasible subspace span{|sigma, y>},
 * indexed in FeasibleSet order.
 */
#pragma once

#include "cvrpaoa/ansatz.hpp"
#include "cvrpaoa/encoding.hpp"
#include "cvrpaoa/statevector.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cvrpaoa {

/// Per-instance tables shared by every SubspaceState: the feasible set,
/// cost per label and the ring-mixer pair tables.
class SubspaceModel {
  public:
    explicit SubspaceModel(const Instance &inst);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t dimension() const { return costs_.size(); }
    [[nodiscard]] const FeasibleSet &feasible() const { return set_; }
    [[nodiscard]] std::span<const double> costs() const { return costs_; }
    [[nodiscard]] double min_cost() const { return min_cost_; }
    /// Decision bitstring of label f.
    [[nodiscard]] const std::string &bitstring(std::size_t f) const {
        return bitstrings_[f];
    }

    /// One ring term: the labels whose x-pattern on the term's four qubits
    /// is (1,1,0,0) paired with their row-swapped partner, and the labels the
    /// term leaves in another pattern (diagonal entry).
    struct RingTerm {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        /// (label, pattern index) for labels outside the rotated pairs.
        std::vector<std::pair<std::size_t, int>> fixed;
    };
    [[nodiscard]] const std::vector<RingTerm> &ring_terms() const { return ring_; }

  private:
    int n_;
    FeasibleSet set_;
    std::vector<double> costs_;
    std::vector<std::string> bitstrings_;
    double min_cost_;
    std::vector<RingTerm> ring_;
};

class SubspaceState {
  public:
    /// Uniform superposition over all feasible labels.
    explicit SubspaceState(const SubspaceModel &model);

    [[nodiscard]] const SubspaceModel &model() const { return *model_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amp_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amp_; }
    [[nodiscard]] double norm() const;

    void apply_phase(double gamma);
    void apply_grover(double beta);
    void apply_ring(double beta);
    void apply_mixer(Mixer m, double beta);

    [[nodiscard]] double expectation() const;
    [[nodiscard]] std::vector<double> probabilities() const;
    /// Decision bitstring -> probability; entries at or below `threshold`
    /// are dropped.
    [[nodiscard]] std::map<std::string, double>
    distribution(double threshold = 0.0) const;

  private:
    const SubspaceModel *model_;
    std::vector<Complex> amp_;
};

[[nodiscard]] SubspaceState init_uniform(const SubspaceModel &model);

/// U_S, then p rounds of phase and mixer, on the subspace.
[[nodiscard]] SubspaceState run_subspace(const SubspaceModel &model, Mixer m,
                                         std::span<const double> gammas,
                                         std::span<const double> betas);

} // namespace cvrpaoa
