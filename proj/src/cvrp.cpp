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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cvrpaoa {

using json = nlohmann::json;

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), w_(std::move(entries)) {
    if (w_.size() != n * n) {
        throw ValidationError("distance matrix must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = w_[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw ValidationError("distance matrix entries must be finite "
                                      "and non-negative");
            }
            if (i == j && v != 0.0) {
                throw ValidationError("distance matrix diagonal must be zero");
            }
        }
    }
}

DistanceMatrix DistanceMatrix::euclidean(std::span<const Point> points) {
    const std::size_t n = points.size();
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                w[i * n + j] = std::hypot(points[i].x - points[j].x,
                                          points[i].y - points[j].y);
            }
        }
    }
    return {n, std::move(w)};
}

double DistanceMatrix::max_entry() const {
    return w_.empty() ? 0.0 : *std::max_element(w_.begin(), w_.end());
}

bool DistanceMatrix::symmetric(double tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

std::vector<Point> all_points(Point depot, const std::vector<Customer> &cs) {
    std::vector<Point> pts{depot};
    for (const auto &c : cs) {
        pts.push_back(c.location);
    }
    return pts;
}

std::vector<int> demand_list(const std::vector<Customer> &cs) {
    std::vector<int> d;
    d.reserve(cs.size());
    for (const auto &c : cs) {
        d.push_back(c.demand);
    }
    return d;
}

} // namespace

Instance::Instance(std::string name, int capacity, Point depot,
                   std::vector<Customer> customers)
    : name_(std::move(name)), capacity_(capacity), depot_(depot),
      customers_(std::move(customers)), demands_(demand_list(customers_)),
      kind_(DistanceKind::Euclidean) {
    validate();
    const auto pts = all_points(depot_, customers_);
    w_ = DistanceMatrix::euclidean(pts);
}

Instance::Instance(std::string name, int capacity, Point depot,
                   std::vector<Customer> customers,
                   DistanceMatrix explicit_distances)
    : name_(std::move(name)), capacity_(capacity), depot_(depot),
      customers_(std::move(customers)), demands_(demand_list(customers_)),
      kind_(DistanceKind::Explicit), w_(std::move(explicit_distances)) {
    validate();
    if (w_.size() != customers_.size() + 1) {
        throw ValidationError("distance matrix must be (N+1)x(N+1)");
    }
}

void Instance::validate() const {
    if (capacity_ <= 0) {
        throw ValidationError("capacity must be positive");
    }
    if (customers_.empty()) {
        throw ValidationError("instance needs at least one customer");
    }
    for (std::size_t i = 0; i < customers_.size(); ++i) {
        const int q = customers_[i].demand;
        if (q < 1) {
            throw ValidationError("customer " + std::to_string(i + 1) +
                                  ": demand must be positive");
        }
        if (q > capacity_) {
            throw ValidationError("customer " + std::to_string(i + 1) +
                                  ": demand exceeds capacity");
        }
    }
}

int Instance::max_demand() const {
    return *std::max_element(demands_.begin(), demands_.end());
}

int Instance::total_demand() const {
    int s = 0;
    for (int q : demands_) {
        s += q;
    }
    return s;
}

namespace {

Point parse_point(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw ValidationError(std::string(what) + " must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Instance load_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("malformed instance document: ") +
                              e.what());
    }
    try {
        if (!doc.is_object()) {
            throw ValidationError("instance document must be an object");
        }
        const std::string name = doc.value("name", std::string("unnamed"));
        if (!doc.contains("capacity") || !doc["capacity"].is_number_integer()) {
            throw ValidationError("capacity must be an integer");
        }
        const int capacity = doc["capacity"].get<int>();
        if (!doc.contains("depot")) {
            throw ValidationError("missing depot");
        }
        const Point depot = parse_point(doc["depot"], "depot");
        if (!doc.contains("customers") || !doc["customers"].is_array()) {
            throw ValidationError("customers must be an array");
        }
        std::vector<Customer> customers;
        std::set<long long> ids;
        for (const auto &c : doc["customers"]) {
            if (!c.is_object() || !c.contains("x") || !c.contains("y") ||
                !c.contains("demand") || !c["demand"].is_number_integer()) {
                throw ValidationError(
                    "each customer needs numeric x, y and integer demand");
            }
            if (c.contains("id")) {
                if (!ids.insert(c["id"].get<long long>()).second) {
                    throw ValidationError("duplicate customer id " +
                                          c["id"].dump());
                }
            }
            customers.push_back({{c["x"].get<double>(), c["y"].get<double>()},
                                 c["demand"].get<int>()});
        }
        const json dist = doc.value("distance", json("euclidean"));
        if (dist.is_string()) {
            if (dist.get<std::string>() != "euclidean") {
                throw ValidationError("distance must be \"euclidean\" or "
                                      "{\"matrix\": ...}");
            }
            return {name, capacity, depot, std::move(customers)};
        }
        if (!dist.is_object() || !dist.contains("matrix") ||
            !dist["matrix"].is_array()) {
            throw ValidationError("distance object needs a matrix");
        }
        const auto &m = dist["matrix"];
        const std::size_t n = m.size();
        std::vector<double> entries;
        for (const auto &row : m) {
            if (!row.is_array() || row.size() != n) {
                throw ValidationError("distance matrix must be square");
            }
            for (const auto &v : row) {
                entries.push_back(v.get<double>());
            }
        }
        return {name, capacity, depot, std::move(customers),
                DistanceMatrix(n, std::move(entries))};
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed instance document: ") +
                              e.what());
    }
}

Instance load_instance_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open instance file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return load_instance(ss.str());
}

std::string instance_to_json(const Instance &inst) {
    json doc;
    doc["name"] = inst.name();
    doc["capacity"] = inst.capacity();
    doc["depot"] = {inst.depot().x, inst.depot().y};
    doc["customers"] = json::array();
    for (const auto &c : inst.customers()) {
        doc["customers"].push_back(
            {{"x", c.location.x}, {"y", c.location.y}, {"demand", c.demand}});
    }
    if (inst.distance_kind() == DistanceKind::Euclidean) {
        doc["distance"] = "euclidean";
    } else {
        const auto &w = inst.distance();
        json m = json::array();
        for (std::size_t i = 0; i < w.size(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < w.size(); ++j) {
                row.push_back(w(i, j));
            }
            m.push_back(row);
        }
        doc["distance"] = {{"matrix", m}};
    }
    return doc.dump(2);
}

Solution Solution::from_routes(const std::vector<Route> &routes) {
    std::vector<Edge> edges;
    for (const auto &r : routes) {
        int prev = 0;
        for (int c : r) {
            edges.emplace_back(prev, c);
            prev = c;
        }
        edges.emplace_back(prev, 0);
    }
    return Solution(std::move(edges));
}

std::vector<Route> Solution::routes() const {
    std::vector<Route> out;
    Route cur;
    bool open = false;
    for (const auto &[from, to] : edges_) {
        if (from == 0) {
            if (open && !cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
            open = true;
        }
        if (to != 0) {
            cur.push_back(to);
        } else {
            out.push_back(cur);
            cur.clear();
            open = false;
        }
    }
    if (open && !cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

std::vector<Route> Solution::canonical_routes() const {
    auto r = routes();
    std::sort(r.begin(), r.end());
    return r;
}

double solution_cost(const Solution &s, const DistanceMatrix &w) {
    double total = 0.0;
    for (const auto &[i, j] : s.edges()) {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= w.size() ||
            static_cast<std::size_t>(j) >= w.size()) {
            throw ValidationError("edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") out of range");
        }
        total += w(i, j);
    }
    return total;
}

ValidityReport validate_solution(const Solution &s, const Instance &inst) {
    ValidityReport rep;
    const int n = inst.num_customers();
    const auto &edges = s.edges();

    // Depot: edges must chain into closed walks that leave and re-enter 0.
    int at = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto [from, to] = edges[k];
        if (from != at) {
            rep.depot_ok = false;
            rep.messages.push_back("edge " + std::to_string(k) +
                                   " does not continue the walk");
            break;
        }
        if (from == 0 && to == 0) {
            rep.depot_ok = false;
            rep.messages.push_back("empty depot loop at edge " +
                                   std::to_string(k));
            break;
        }
        at = to;
    }
    if (rep.depot_ok && at != 0) {
        rep.depot_ok = false;
        rep.messages.emplace_back("last route does not return to the depot");
    }

    const auto routes = s.routes();
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto &r : routes) {
        for (int c : r) {
            if (c < 1 || c > n) {
                rep.visit_ok = false;
                rep.messages.push_back("unknown customer " + std::to_string(c));
                continue;
            }
            ++seen[c];
        }
    }
    for (int c = 1; c <= n; ++c) {
        if (seen[c] == 0) {
            rep.visit_ok = false;
            rep.missing_customers.push_back(c);
            rep.messages.push_back("customer " + std::to_string(c) +
                                   " is not visited");
        } else if (seen[c] > 1) {
            rep.visit_ok = false;
            rep.repeated_customers.push_back(c);
            rep.messages.push_back("customer " + std::to_string(c) +
                                   " is visited " + std::to_string(seen[c]) +
                                   " times");
        }
    }

    for (std::size_t k = 0; k < routes.size(); ++k) {
        int load = 0;
        for (int c : routes[k]) {
            if (c >= 1 && c <= n) {
                load += inst.demand(c);
            }
        }
        if (load > inst.capacity()) {
            rep.capacity_ok = false;
            rep.overloaded_routes.push_back(k);
            rep.messages.push_back("route " + std::to_string(k) + " carries " +
                                   std::to_string(load) + " > capacity " +
                                   std::to_string(inst.capacity()));
        }
    }
    return rep;
}

bool same_cost(double a, double b) {
    return std::abs(a - b) <= kCostTolerance * std::max(1.0, std::abs(a));
}

ExactResult exact_solve(const Instance &inst) {
    const int n = inst.num_customers();
    if (n > kMaxEnumerationCustomers) {
        throw ResourceError("exact_solve enumerates N!*2^(N-1) encodings; N=" +
                            std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kMaxEnumerationCustomers));
    }
    const FeasibleSet fs(n);
    std::vector<double> costs(fs.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < fs.size(); ++k) {
        costs[k] = route_cost(fs.at(k), inst);
        best = std::min(best, costs[k]);
    }
    ExactResult res;
    res.min_cost = best;
    std::map<std::vector<Route>, Solution> distinct;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (same_cost(costs[k], best)) {
            ++res.optimal_encodings;
            const Solution s = decode(fs.at(k), inst.demands(), inst.capacity());
            distinct.emplace(s.canonical_routes(), s);
        }
    }
    for (auto &[key, s] : distinct) {
        res.optima.push_back(Solution::from_routes(key));
    }
    return res;
}

std::vector<Instance> generate_instances(const GeneratorConfig &cfg) {
    if (cfg.customers < 1) {
        throw ValidationError("need at least one customer");
    }
    if (cfg.count < 0) {
        throw ValidationError("count must be non-negative");
    }
    if (cfg.capacity < 1 || cfg.demand_lo < 1 || cfg.demand_lo > cfg.demand_hi ||
        cfg.demand_hi > cfg.capacity) {
        throw ValidationError("demand range must satisfy 1 <= lo <= hi <= capacity");
    }
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (int k = 0; k < cfg.count; ++k) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        const Point depot{rng.uniform(), rng.uniform()};
        std::vector<Customer> cs;
        for (int i = 0; i < cfg.customers; ++i) {
            const Point p{rng.uniform(), rng.uniform()};
            cs.push_back({p, rng.uniform_int(cfg.demand_lo, cfg.demand_hi)});
        }
        out.emplace_back("gen-s" + std::to_string(cfg.seed) + "-n" +
                             std::to_string(cfg.customers) + "-" +
                             std::to_string(k),
                         cfg.capacity, depot, std::move(cs));
    }
    return out;
}

} // namespace cvrpaoa
