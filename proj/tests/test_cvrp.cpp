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
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

using namespace cvrpaoa;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kData = CVRPAOA_DATA_DIR;

Instance p1() { return load_instance_file(kData + "/p1.json"); }
Instance p2() { return load_instance_file(kData + "/p2.json"); }

Instance line3(int cap, std::vector<int> q) {
    std::vector<Customer> cs;
    for (int i = 0; i < static_cast<int>(q.size()); ++i) {
        cs.push_back({{static_cast<double>(i + 1), 0.0}, q[i]});
    }
    return Instance("line", cap, {0.0, 0.0}, cs);
}

} // namespace

TEST_CASE("fixtures load with four customers") {
    const Instance a = p1();
    CHECK(a.num_customers() == 4);
    CHECK(a.capacity() == 3);
    CHECK(a.depot().x == doctest::Approx(0.66));
    CHECK(a.depot().y == doctest::Approx(0.41));
    const Instance b = p2();
    CHECK(b.num_customers() == 4);
    CHECK(b.capacity() == 4);
    CHECK(b.depot().x == doctest::Approx(0.05));
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
            CHECK(b.distance()(i, j) == doctest::Approx(oracle::dist(b, i, j)).epsilon(1e-14));
        }
    }
}

TEST_CASE("customer at the depot has zero distance") {
    const Instance inst("one", 2, {0.3, 0.3}, {{{0.3, 0.3}, 2}});
    CHECK(inst.distance()(0, 1) == 0.0);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS((void)load_instance("{"), ValidationError);
    CHECK_THROWS_AS((void)load_instance(R"({"name":"x","capacity":0,"depot":[0,0],
        "customers":[{"x":1,"y":1,"demand":1}],"distance":"euclidean"})"),
                    ValidationError);
    CHECK_THROWS_AS((void)load_instance(R"({"name":"x","capacity":2,"depot":[0,0],
        "customers":[{"x":1,"y":1,"demand":3}],"distance":"euclidean"})"),
                    ValidationError);
    CHECK_THROWS_AS((void)load_instance(R"({"name":"x","capacity":2,"depot":[0,0],
        "customers":[{"x":1,"y":1,"demand":1}],"distance":{"matrix":[[0,1],[1]]}})"),
                    ValidationError);
}

TEST_CASE("explicit matrices may be asymmetric") {
    const Instance inst = load_instance(R"({"name":"m","capacity":2,"depot":[0,0],
        "customers":[{"x":0,"y":0,"demand":1},{"x":0,"y":0,"demand":1}],
        "distance":{"matrix":[[0,1,2],[3,0,4],[5,6,0]]}})");
    CHECK(inst.distance_kind() == DistanceKind::Explicit);
    CHECK(inst.distance()(1, 0) == 3.0);
    CHECK_FALSE(inst.distance().symmetric());
}

TEST_CASE("json round trip preserves the instance") {
    const Instance a = p2();
    const Instance b = load_instance(instance_to_json(a));
    CHECK(b.name() == a.name());
    CHECK(b.capacity() == a.capacity());
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
            CHECK(b.distance()(i, j) == a.distance()(i, j));
        }
    }
    CHECK(read_file(kData + "/p2.json").find("\"P2\"") != std::string::npos);
}

TEST_CASE("solution cost") {
    const Instance inst = p1();
    CHECK(solution_cost(Solution{}, inst.distance()) == 0.0);
    const Solution s = Solution::from_routes({{1}});
    CHECK(solution_cost(s, inst.distance()) == doctest::Approx(2 * oracle::dist(inst, 0, 1)));
    CHECK_THROWS_AS((void)solution_cost(Solution({{0, 9}}), inst.distance()),
                    ValidationError);
}

TEST_CASE("validation reports each violated constraint") {
    const Instance inst = line3(3, {2, 2, 1});
    const auto over = validate_solution(Solution::from_routes({{1, 2}, {3}}), inst);
    CHECK_FALSE(over.capacity_ok);
    CHECK(over.overloaded_routes == std::vector<std::size_t>{0});
    CHECK(over.depot_ok);
    CHECK(over.visit_ok);

    const auto twice = validate_solution(Solution::from_routes({{1}, {1, 3}, {2}}), inst);
    CHECK_FALSE(twice.visit_ok);
    CHECK(twice.repeated_customers == std::vector<int>{1});

    const auto missing = validate_solution(Solution::from_routes({{1}, {2}}), inst);
    CHECK_FALSE(missing.visit_ok);
    CHECK(missing.missing_customers == std::vector<int>{3});

    const auto open = validate_solution(Solution({{0, 1}, {1, 2}}), inst);
    CHECK_FALSE(open.depot_ok);

    CHECK(validate_solution(Solution::from_routes({{1}, {2, 3}}), inst).ok());
}

TEST_CASE("exact solve matches brute force over split orders") {
    for (const Instance &inst : {p1(), p2()}) {
        const auto costs = oracle::all_costs(inst);
        const double best = *std::min_element(costs.begin(), costs.end());
        const ExactResult r = exact_solve(inst);
        CHECK(r.min_cost == doctest::Approx(best).epsilon(1e-12));
        const auto n_opt = std::count_if(costs.begin(), costs.end(), [&](double c) {
            return std::abs(c - best) <= 1e-9;
        });
        CHECK(r.optimal_encodings == static_cast<std::size_t>(n_opt));
        REQUIRE_FALSE(r.optima.empty());
        for (const auto &s : r.optima) {
            CHECK(validate_solution(s, inst).ok());
            CHECK(solution_cost(s, inst.distance()) == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("optimal route counts of the fixtures") {
    for (const auto &s : exact_solve(p1()).optima) {
        CHECK(s.routes().size() == 3);
    }
    for (const auto &s : exact_solve(p2()).optima) {
        CHECK(s.routes().size() == 2);
    }
}

TEST_CASE("single customer has one route") {
    const Instance inst("one", 3, {0.0, 0.0}, {{{0.3, 0.4}, 1}});
    const ExactResult r = exact_solve(inst);
    CHECK(r.min_cost == doctest::Approx(1.0));
    REQUIRE(r.optima.size() == 1);
    CHECK(r.optima[0].routes() == std::vector<Route>{{1}});
}

TEST_CASE("full-capacity demands force singleton routes") {
    GeneratorConfig g;
    g.customers = 3;
    g.count = 1;
    g.capacity = 4;
    g.demand_lo = 4;
    g.demand_hi = 4;
    g.seed = 0;
    const auto insts = generate_instances(g);
    REQUIRE(insts.size() == 1);
    for (const auto &s : exact_solve(insts[0]).optima) {
        CHECK(s.routes().size() == 3);
    }
}

TEST_CASE("generator is reproducible and distinct") {
    GeneratorConfig g;
    const auto a = generate_instances(g);
    const auto b = generate_instances(g);
    REQUIRE(a.size() == 48);
    std::set<std::string> names;
    std::set<std::pair<double, double>> depots;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(instance_to_json(a[k]) == instance_to_json(b[k]));
        CHECK(a[k].num_customers() == 3);
        for (int q : a[k].demands()) {
            CHECK(q >= 1);
            CHECK(q <= 3);
        }
        for (const auto &c : a[k].customers()) {
            CHECK(c.location.x >= 0.0);
            CHECK(c.location.x < 1.0);
        }
        names.insert(a[k].name());
        depots.insert({a[k].depot().x, a[k].depot().y});
    }
    CHECK(names.size() == 48);
    CHECK(depots.size() == 48);
    g.count = 0;
    CHECK(generate_instances(g).empty());
    g.count = 1;
    g.demand_lo = 3;
    g.demand_hi = 2;
    CHECK_THROWS_AS((void)generate_instances(g), ValidationError);
}

TEST_CASE("enumeration bound") {
    std::vector<Customer> cs(kMaxEnumerationCustomers + 1, Customer{{0.5, 0.5}, 1});
    const Instance big("big", 4, {0.0, 0.0}, cs);
    CHECK_THROWS_AS((void)exact_solve(big), ResourceError);
}
