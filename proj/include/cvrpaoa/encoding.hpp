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
 * Permutation + depot-return encoding of CVRP solutions and its classical
 * semantics: decoding, condition tracing, the two cost functions and the
 * feasible-set enumeration.
 *
 * Time steps t and customers i are 1-based throughout, matching the
 * decision-bit layout: x(t,i) lives at (t-1)*N + (i-1) and y_t at
 * N*N + (t-2).
 */
#pragma once

#include "cvrpaoa/cvrp.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvrpaoa {

using Bits = std::vector<std::uint8_t>;

/// A feasible search-space element: a visiting order plus depot-return bits.
struct Encoding {
    /// order[t-1] = customer visited at time step t.
    std::vector<int> order;
    /// returns[t-2] = y_t for t = 2..N.
    Bits returns;

    [[nodiscard]] int size() const { return static_cast<int>(order.size()); }
    [[nodiscard]] int customer_at(int t) const { return order[t - 1]; }
    [[nodiscard]] bool x(int t, int i) const { return order[t - 1] == i; }
    [[nodiscard]] bool y(int t) const { return returns[t - 2] != 0; }

    /// Throws ValidationError unless order is a permutation of 1..N and
    /// returns holds N-1 binary values.
    void validate() const;

    friend bool operator==(const Encoding &, const Encoding &) = default;
};

struct DecisionLayout {
    int n = 0;

    [[nodiscard]] int x_index(int t, int i) const { return (t - 1) * n + (i - 1); }
    [[nodiscard]] int y_index(int t) const { return n * n + (t - 2); }
    [[nodiscard]] int width() const { return n * n + n - 1; }
    /// Inverse of x_index: returns (t, i).
    [[nodiscard]] std::pair<int, int> x_position(int index) const {
        return {index / n + 1, index % n + 1};
    }
};

[[nodiscard]] DecisionLayout bit_layout(int n);

/// Decision bits indexed by DecisionLayout.
[[nodiscard]] Bits decision_bits(const Encoding &enc);
/// Text form: leftmost character is the highest decision-bit index.
[[nodiscard]] std::string to_bitstring(std::span<const std::uint8_t> bits);
[[nodiscard]] std::string to_bitstring(const Encoding &enc);
[[nodiscard]] Bits from_bitstring(std::string_view text);
/// Parses decision bits; throws ValidationError if x is not a permutation
/// matrix.
[[nodiscard]] Encoding encoding_from_bits(std::span<const std::uint8_t> bits,
                                          int n);
/// True when the x part of `bits` is a permutation matrix.
[[nodiscard]] bool is_feasible_bits(std::span<const std::uint8_t> bits, int n);

/// Route set produced by conditional decoding. Always satisfies the depot,
/// visit and capacity constraints when every q_i <= Q.
[[nodiscard]] Solution decode(const Encoding &enc, std::span<const int> demands,
                              int capacity);

/// C(x, y): total distance of decode(enc).
[[nodiscard]] double route_cost(const Encoding &enc, const Instance &inst);

struct ConditionTrace {
    /// a[t-2] for t = 2..N.
    Bits a;
    /// Value of the running-demand register at the end of each step.
    std::vector<int> d_values;
    /// Customers logged in the current sub-route at the end of each step.
    std::vector<std::vector<int>> c_sets;
};

/// Classical execution of the condition-encoding procedure.
[[nodiscard]] ConditionTrace condition_trace(const Encoding &enc,
                                             std::span<const int> demands,
                                             int capacity);

/// The (x, a) cost polynomial evaluated on arbitrary bits. x_bits holds N*N
/// values in layout order and a_bits holds N-1 values.
[[nodiscard]] double cost_polynomial(std::span<const std::uint8_t> x_bits,
                                     std::span<const std::uint8_t> a_bits,
                                     const DistanceMatrix &w, int n);

/// Reformulated cost on a permutation matrix; validates its inputs.
[[nodiscard]] double reformulated_cost(std::span<const std::uint8_t> x_bits,
                                       std::span<const std::uint8_t> a_bits,
                                       const Instance &inst);

/// Lexicographic enumeration of all (permutation, y) pairs: permutation
/// major, y minor with y_2 as the most significant bit.
class FeasibleSet {
  public:
    explicit FeasibleSet(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t size() const { return perms_.size() * y_count_; }
    [[nodiscard]] std::size_t permutation_count() const { return perms_.size(); }
    [[nodiscard]] std::size_t y_count() const { return y_count_; }

    [[nodiscard]] Encoding at(std::size_t index) const;
    [[nodiscard]] std::size_t index_of(const Encoding &enc) const;
    /// Permutation part of label `index` (order vector).
    [[nodiscard]] const std::vector<int> &permutation(std::size_t perm_rank) const {
        return perms_[perm_rank];
    }
    [[nodiscard]] static std::size_t permutation_rank(std::span<const int> order);

  private:
    int n_;
    std::size_t y_count_;
    std::vector<std::vector<int>> perms_;
};

/// Throws ResourceError for N > kMaxEnumerationCustomers.
[[nodiscard]] FeasibleSet enumerate_feasible(int n);

} // namespace cvrpaoa
