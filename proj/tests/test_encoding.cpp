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
#include "cvrpaoa/cvrp.hpp"
#include "cvrpaoa/encoding.hpp"
#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace cvrpaoa;

namespace {

Encoding enc_of(std::vector<int> order, Bits y) { return Encoding{std::move(order), std::move(y)}; }

Instance random_instance(int n, std::uint64_t seed, int cap = 4) {
    GeneratorConfig g;
    g.customers = n;
    g.count = 1;
    g.capacity = cap;
    g.demand_lo = 1;
    g.demand_hi = std::min(3, cap);
    g.seed = seed;
    return generate_instances(g)[0];
}

Bits x_part(const Encoding &e) {
    Bits b = decision_bits(e);
    b.resize(static_cast<std::size_t>(e.size() * e.size()));
    return b;
}

// Expected a and d traces from the greedy split.
void expected_trace(const std::vector<int> &order, const std::vector<int> &y,
                    const std::vector<int> &q, int cap, Bits &a, std::vector<int> &d) {
    const int n = static_cast<int>(order.size());
    int load = 0;
    a.assign(static_cast<std::size_t>(n - 1), 0);
    d.clear();
    for (int t = 0; t < n; ++t) {
        const int c = order[t];
        const bool split = t > 0 && (y[t - 1] != 0 || load + q[c - 1] > cap);
        if (t > 0) {
            a[t - 1] = split ? 1 : 0;
        }
        const int next = split ? q[c - 1] : load + q[c - 1];
        // The last step keeps the unrecovered sum.
        load = split && t == n - 1 ? load + q[c - 1] : next;
        d.push_back(load);
        load = next;
    }
}

} // namespace

TEST_CASE("bit layout") {
    const DecisionLayout l3 = bit_layout(3);
    CHECK(l3.x_index(3, 3) == 8);
    CHECK(l3.y_index(2) == 9);
    CHECK(l3.y_index(3) == 10);
    CHECK(bit_layout(4).width() == 19);
    for (int n = 1; n <= 6; ++n) {
        const DecisionLayout l = bit_layout(n);
        for (int k = 0; k < n * n; ++k) {
            const auto [t, i] = l.x_position(k);
            CHECK(l.x_index(t, i) == k);
        }
    }
    CHECK_THROWS_AS((void)bit_layout(0), ValidationError);
}

TEST_CASE("bitstrings put the highest index on the left") {
    const Encoding e = enc_of({2, 1}, {1});
    CHECK(to_bitstring(e) == "10110");
    const Bits b = from_bitstring("10110");
    CHECK(encoding_from_bits(b, 2) == e);
    CHECK(is_feasible_bits(b, 2));
    CHECK_FALSE(is_feasible_bits(from_bitstring("11110"), 2));
    CHECK_THROWS_AS((void)from_bitstring("10a"), ValidationError);
    CHECK_THROWS_AS((void)encoding_from_bits(from_bitstring("11110"), 2), ValidationError);
}

TEST_CASE("malformed encodings are rejected") {
    CHECK_THROWS_AS(enc_of({1, 1}, {0}).validate(), ValidationError);
    CHECK_THROWS_AS(enc_of({1, 2}, {0, 0}).validate(), ValidationError);
    CHECK_THROWS_AS(enc_of({1, 2}, {2}).validate(), ValidationError);
}

TEST_CASE("decode hand traces") {
    const std::vector<int> q{1, 2, 2, 1};
    CHECK(decode(enc_of({1, 2, 3, 4}, {0, 0, 0}), q, 3).routes() ==
          std::vector<Route>{{1, 2}, {3, 4}});
    CHECK(decode(enc_of({1, 2, 3, 4}, {1, 0, 0}), q, 3).routes() ==
          std::vector<Route>{{1}, {2}, {3, 4}});
    const std::vector<int> ones{1, 1, 1, 1, 1};
    CHECK(decode(enc_of({3, 4, 5, 1, 2}, {1, 0, 0, 0}), ones, 2).routes() ==
          std::vector<Route>{{3}, {4, 5}, {1, 2}});
}

TEST_CASE("route cost special cases") {
    const Instance one("one", 1, {0.0, 0.0}, {{{0.6, 0.8}, 1}});
    CHECK(route_cost(enc_of({1}, {}), one) == doctest::Approx(2.0));
    const Instance inst = random_instance(4, 3);
    const Encoding e = enc_of({2, 4, 1, 3}, {1, 1, 1});
    double legs = 0.0;
    for (int c = 1; c <= 4; ++c) {
        legs += oracle::dist(inst, 0, c) + oracle::dist(inst, c, 0);
    }
    CHECK(route_cost(e, inst) == doctest::Approx(legs).epsilon(1e-12));
}

TEST_CASE("condition trace hand trace") {
    const std::vector<int> q{1, 2, 2, 1};
    const ConditionTrace tr = condition_trace(enc_of({1, 2, 3, 4}, {0, 0, 0}), q, 3);
    CHECK(tr.a == Bits{0, 1, 0});
    CHECK(tr.d_values == std::vector<int>{1, 3, 2, 3});
    CHECK(condition_trace(enc_of({4, 2, 1, 3}, {1, 1, 1}), q, 3).a == Bits{1, 1, 1});
    CHECK(condition_trace(enc_of({4, 2, 1, 3}, {0, 0, 0}), q, 6).a == Bits{0, 0, 0});
}

TEST_CASE("feasible set sizes and indexing") {
    CHECK(enumerate_feasible(1).size() == 1);
    CHECK(enumerate_feasible(3).size() == 24);
    CHECK(enumerate_feasible(4).size() == 192);
    for (int n = 1; n <= 5; ++n) {
        const FeasibleSet fs = enumerate_feasible(n);
        std::set<std::string> seen;
        const auto perms = oracle::permutations(n);
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const Encoding e = fs.at(k);
            CHECK(fs.index_of(e) == k);
            CHECK(e.order == perms[k / fs.y_count()]);
            seen.insert(to_bitstring(e));
        }
        CHECK(seen.size() == fs.size());
    }
    const FeasibleSet f3 = enumerate_feasible(3);
    CHECK(f3.at(1).returns == Bits{0, 1});
    CHECK(f3.at(2).returns == Bits{1, 0});
}

TEST_CASE("exhaustive semantics up to five customers") {
    for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t seed : {1ULL, 2ULL}) {
            const Instance inst = random_instance(n, seed + 10 * n);
            const auto q = oracle::demands(inst);
            const FeasibleSet fs = enumerate_feasible(n);
            for (std::size_t k = 0; k < fs.size(); ++k) {
                const Encoding e = fs.at(k);
                std::vector<int> y(e.returns.begin(), e.returns.end());
                const auto routes = oracle::split_routes(e.order, y, q, inst.capacity());
                const Solution s = decode(e, q, inst.capacity());
                CHECK(s.routes() == routes);
                CHECK(validate_solution(s, inst).ok());
                const double c = route_cost(e, inst);
                CHECK(std::abs(c - oracle::routes_cost(inst, routes)) <= 1e-12);

                const ConditionTrace tr = condition_trace(e, q, inst.capacity());
                Bits a;
                std::vector<int> d;
                expected_trace(e.order, y, q, inst.capacity(), a, d);
                CHECK(tr.a == a);
                CHECK(tr.d_values == d);
                for (int v : tr.d_values) {
                    CHECK(v >= *std::min_element(q.begin(), q.end()));
                    CHECK(v <= inst.capacity() + inst.max_demand());
                }
                CHECK(std::abs(reformulated_cost(x_part(e), tr.a, inst) - c) <= 1e-12);
            }
        }
    }
}

TEST_CASE("reformulated cost extremes") {
    const Instance inst = random_instance(4, 5);
    const Encoding e = enc_of({3, 1, 4, 2}, {0, 0, 0});
    const double tour = oracle::routes_cost(inst, {{3, 1, 4, 2}});
    CHECK(reformulated_cost(x_part(e), Bits{0, 0, 0}, inst) == doctest::Approx(tour).epsilon(1e-12));
    const double legs = oracle::routes_cost(inst, {{3}, {1}, {4}, {2}});
    CHECK(reformulated_cost(x_part(e), Bits{1, 1, 1}, inst) == doctest::Approx(legs).epsilon(1e-12));
    CHECK_THROWS_AS((void)reformulated_cost(Bits(16, 0), Bits{0, 0, 0}, inst), ValidationError);
}

TEST_CASE("sampled cost equivalence at six customers") {
    const Instance inst = random_instance(6, 99);
    const auto q = oracle::demands(inst);
    const FeasibleSet fs = enumerate_feasible(6);
    SplitMix64 rng(4);
    for (int s = 0; s < 10000; ++s) {
        const Encoding e = fs.at(rng.next() % fs.size());
        const ConditionTrace tr = condition_trace(e, q, inst.capacity());
        CHECK(std::abs(reformulated_cost(x_part(e), tr.a, inst) - route_cost(e, inst)) <= 1e-12);
    }
}
