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
 * Classical CVRP model: instances, distances, solutions, validation, the
 * exhaustive oracle and the random instance generator.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvrpaoa {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Customer {
    Point location;
    int demand = 1;
};

/// Square matrix of travel distances, vertex 0 is the depot.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    /// Row-major (n x n) entries; must be finite, non-negative, zero diagonal.
    DistanceMatrix(std::size_t n, std::vector<double> entries);

    static DistanceMatrix euclidean(std::span<const Point> points);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return w_[i * n_ + j];
    }
    [[nodiscard]] double max_entry() const;
    [[nodiscard]] bool symmetric(double tol = 0.0) const;

  private:
    std::size_t n_ = 0;
    std::vector<double> w_;
};

enum class DistanceKind { Euclidean, Explicit };

/// An N-customer CVRP instance. Immutable after construction.
class Instance {
  public:
    Instance(std::string name, int capacity, Point depot,
             std::vector<Customer> customers);
    Instance(std::string name, int capacity, Point depot,
             std::vector<Customer> customers, DistanceMatrix explicit_distances);

    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] int capacity() const { return capacity_; }
    [[nodiscard]] Point depot() const { return depot_; }
    [[nodiscard]] const std::vector<Customer> &customers() const {
        return customers_;
    }
    [[nodiscard]] int num_customers() const {
        return static_cast<int>(customers_.size());
    }
    /// Demand of customer i, 1-based.
    [[nodiscard]] int demand(int i) const { return demands_[i - 1]; }
    /// Demands of customers 1..N in order (0-based storage).
    [[nodiscard]] std::span<const int> demands() const { return demands_; }
    [[nodiscard]] int max_demand() const;
    [[nodiscard]] int total_demand() const;
    [[nodiscard]] DistanceKind distance_kind() const { return kind_; }
    [[nodiscard]] const DistanceMatrix &distance() const { return w_; }

  private:
    void validate() const;

    std::string name_;
    int capacity_;
    Point depot_;
    std::vector<Customer> customers_;
    std::vector<int> demands_;
    DistanceKind kind_;
    DistanceMatrix w_;
};

/// Parses and validates an instance document. Throws ValidationError.
[[nodiscard]] Instance load_instance(std::string_view json_text);
[[nodiscard]] Instance load_instance_file(const std::string &path);
[[nodiscard]] std::string instance_to_json(const Instance &inst);

using Edge = std::pair<int, int>;
/// Customers of one depot-to-depot route, depot omitted.
using Route = std::vector<int>;

/// A route set stored as ordered directed edges; vertex 0 is the depot.
class Solution {
  public:
    Solution() = default;
    explicit Solution(std::vector<Edge> edges) : edges_(std::move(edges)) {}
    static Solution from_routes(const std::vector<Route> &routes);

    [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }
    /// Splits the edge walk at depot visits. Edges that do not chain into
    /// depot-to-depot walks are reported by validate_solution, not here.
    [[nodiscard]] std::vector<Route> routes() const;
    /// Routes sorted lexicographically; two solutions with equal canonical
    /// forms describe the same route set.
    [[nodiscard]] std::vector<Route> canonical_routes() const;

    friend bool operator==(const Solution &, const Solution &) = default;

  private:
    std::vector<Edge> edges_;
};

[[nodiscard]] double solution_cost(const Solution &s, const DistanceMatrix &w);

struct ValidityReport {
    bool depot_ok = true;
    bool visit_ok = true;
    bool capacity_ok = true;
    /// Indices into Solution::routes() whose demand exceeds capacity.
    std::vector<std::size_t> overloaded_routes;
    std::vector<int> missing_customers;
    std::vector<int> repeated_customers;
    std::vector<std::string> messages;

    [[nodiscard]] bool ok() const { return depot_ok && visit_ok && capacity_ok; }
};

[[nodiscard]] ValidityReport validate_solution(const Solution &s,
                                               const Instance &inst);

struct ExactResult {
    double min_cost = 0.0;
    /// Distinct optimal route sets in canonical order.
    std::vector<Solution> optima;
    /// Number of feasible encodings that decode to an optimal cost.
    std::size_t optimal_encodings = 0;
};

inline constexpr int kMaxEnumerationCustomers = 8;

/// Relative tolerance used when comparing tour costs for equality.
inline constexpr double kCostTolerance = 1e-9;
[[nodiscard]] bool same_cost(double a, double b);

/// Exhaustive search over the feasible encoding space (N <= 8).
[[nodiscard]] ExactResult exact_solve(const Instance &inst);

struct GeneratorConfig {
    int customers = 3;
    int count = 48;
    int capacity = 4;
    int demand_lo = 1;
    int demand_hi = 3;
    std::uint64_t seed = 7;
};

/// Seeded unit-square instances with uniform integer demands.
[[nodiscard]] std::vector<Instance>
generate_instances(const GeneratorConfig &cfg);

} // namespace cvrpaoa
