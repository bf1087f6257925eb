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
#include "cvrpaoa/result.hpp"

#include "cvrpaoa/errors.hpp"

#include <json.hpp>

namespace cvrpaoa {

double optimality_gap(double expectation, double oracle_cost) {
    if (!(oracle_cost > 0.0)) {
        throw ValidationError("optimality gap needs a positive oracle cost");
    }
    return expectation / oracle_cost - 1.0;
}

std::string to_json(const RunResult &r, int indent) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["method"] = r.method;
    if (!r.mixer.empty()) {
        j["mixer"] = r.mixer;
    }
    if (!r.backend.empty()) {
        j["backend"] = r.backend;
    }
    j["p"] = r.p;
    j["params"] = {{"gamma", r.gamma}, {"beta", r.beta}};
    j["metrics"] = {{"alpha", r.metrics.alpha},
                    {"r_opt", r.metrics.r_opt},
                    {"r_feas", r.metrics.r_feas}};
    j["expectation"] = r.expectation;
    j["oracle_cost"] = r.oracle_cost;
    nlohmann::ordered_json dist = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.distribution) {
        dist[k] = v;
    }
    j["distribution"] = std::move(dist);
    j["trace"] = r.trace;
    j["seed"] = r.seed;
    j["optimizer"] = {{"starts", r.starts},
                      {"budget", r.budget},
                      {"evaluations", r.evaluations}};
    j["wall_seconds"] = r.wall_seconds;
    return j.dump(indent);
}

RunResult result_from_json(const std::string &text) {
    try {
        const auto j = nlohmann::json::parse(text);
        RunResult r;
        r.instance = j.at("instance").get<std::string>();
        r.method = j.at("method").get<std::string>();
        r.mixer = j.value("mixer", std::string{});
        r.backend = j.value("backend", std::string{});
        r.p = j.at("p").get<int>();
        r.gamma = j.at("params").at("gamma").get<std::vector<double>>();
        r.beta = j.at("params").at("beta").get<std::vector<double>>();
        r.metrics.alpha = j.at("metrics").at("alpha").get<double>();
        r.metrics.r_opt = j.at("metrics").at("r_opt").get<double>();
        r.metrics.r_feas = j.at("metrics").at("r_feas").get<double>();
        r.expectation = j.value("expectation", 0.0);
        r.oracle_cost = j.at("oracle_cost").get<double>();
        r.distribution =
            j.at("distribution").get<std::map<std::string, double>>();
        r.trace = j.at("trace").get<std::vector<double>>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("optimizer")) {
            r.starts = j["optimizer"].value("starts", 0);
            r.budget = j["optimizer"].value("budget", 0);
            r.evaluations = j["optimizer"].value("evaluations", 0);
        }
        r.wall_seconds = j.value("wall_seconds", 0.0);
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed result document: ") +
                              e.what());
    }
}

} // namespace cvrpaoa
