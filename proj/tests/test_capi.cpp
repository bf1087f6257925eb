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
// Exercises the shared library through its C header only.
#include "cvrpaoa/cvrpaoa.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const char *what, int line) {
    if (!ok) {
        std::printf("FAIL line %d: %s (last error: %s)\n", line, what, cvrpaoa_last_error());
        ++failures;
    }
}

#define EXPECT(cond) check((cond), #cond, __LINE__)

std::string take(char *s) {
    std::string out = s ? s : "";
    cvrpaoa_string_free(s);
    return out;
}

void instances() {
    cvrpaoa_instance *p1 = nullptr;
    EXPECT(cvrpaoa_instance_builtin("p1", &p1) == CVRPAOA_OK);
    int n = 0;
    EXPECT(cvrpaoa_instance_num_customers(p1, &n) == CVRPAOA_OK && n == 4);

    char *json = nullptr;
    EXPECT(cvrpaoa_instance_to_json(p1, &json) == CVRPAOA_OK);
    cvrpaoa_instance *again = nullptr;
    EXPECT(cvrpaoa_instance_from_json(json, &again) == CVRPAOA_OK);
    char *json2 = nullptr;
    EXPECT(cvrpaoa_instance_to_json(again, &json2) == CVRPAOA_OK);
    EXPECT(std::strcmp(json, json2) == 0);
    cvrpaoa_string_free(json);
    cvrpaoa_string_free(json2);
    cvrpaoa_instance_free(again);

    cvrpaoa_instance *file = nullptr;
    EXPECT(cvrpaoa_instance_open(CVRPAOA_DATA_DIR "/p2.json", &file) == CVRPAOA_OK);
    const std::string exact = [&] {
        char *s = nullptr;
        EXPECT(cvrpaoa_solve_exact(file, &s) == CVRPAOA_OK);
        return take(s);
    }();
    EXPECT(exact.find("\"optimal_encodings\"") != std::string::npos);
    cvrpaoa_instance_free(file);

    cvrpaoa_instance *bad = nullptr;
    EXPECT(cvrpaoa_instance_from_json("{\"name\":1}", &bad) == CVRPAOA_ERROR_VALIDATION);
    EXPECT(bad == nullptr);
    EXPECT(std::strlen(cvrpaoa_last_error()) > 0);
    EXPECT(cvrpaoa_instance_builtin("p1", nullptr) == CVRPAOA_ERROR_VALIDATION);
    EXPECT(cvrpaoa_instance_from_file("/nonexistent.json", &bad) == CVRPAOA_ERROR_VALIDATION);
    cvrpaoa_instance_free(nullptr);
    cvrpaoa_instance_free(p1);
}

void runs() {
    cvrpaoa_instance *p2 = nullptr;
    cvrpaoa_instance_builtin("p2", &p2);
    cvrpaoa_run_options o;
    cvrpaoa_run_options_default(&o);
    EXPECT(o.depth == 1 && o.starts == 20 && o.budget == 200);
    o.starts = 2;
    o.budget = 30;
    for (int mixer : {CVRPAOA_MIXER_GROVER, CVRPAOA_MIXER_RING}) {
        o.mixer = mixer;
        cvrpaoa_result *r = nullptr;
        EXPECT(cvrpaoa_run(p2, &o, &r) == CVRPAOA_OK);
        double alpha = -1, r_opt = -1, r_feas = -1;
        EXPECT(cvrpaoa_result_metrics(r, &alpha, &r_opt, &r_feas) == CVRPAOA_OK);
        EXPECT(std::abs(r_feas - 1.0) < 1e-9);
        EXPECT(r_opt >= 0.0 && r_opt <= 1.0);
        EXPECT(alpha >= -1e-9);
        char *js = nullptr;
        EXPECT(cvrpaoa_result_to_json(r, &js) == CVRPAOA_OK);
        EXPECT(take(js).find("\"method\": \"aoa\"") != std::string::npos);
        cvrpaoa_result_free(r);
    }

    o.backend = CVRPAOA_BACKEND_GATE;
    cvrpaoa_result *r = nullptr;
    EXPECT(cvrpaoa_run(p2, &o, &r) == CVRPAOA_ERROR_RESOURCE);
    EXPECT(cvrpaoa_run_qubo(p2, &o, &r) == CVRPAOA_ERROR_RESOURCE);
    o.backend = CVRPAOA_BACKEND_SUBSPACE;
    o.mixer = 7;
    EXPECT(cvrpaoa_run(p2, &o, &r) == CVRPAOA_ERROR_VALIDATION);
    o.mixer = CVRPAOA_MIXER_GROVER;
    o.depth = 0;
    EXPECT(cvrpaoa_run(p2, &o, &r) == CVRPAOA_ERROR_VALIDATION);

    char *csv = nullptr;
    EXPECT(cvrpaoa_landscape(p2, CVRPAOA_MIXER_GROVER, 4, 3, 6.283185307179586,
                             6.283185307179586, &csv) == CVRPAOA_OK);
    const std::string text = take(csv);
    EXPECT(text.rfind("gamma,beta,energy", 0) == 0);
    int lines = 0;
    for (char c : text) {
        lines += c == '\n';
    }
    EXPECT(lines == 13);
    cvrpaoa_instance_free(p2);
}

void small_qubo() {
    char *arr = nullptr;
    EXPECT(cvrpaoa_generate(3, 2, 4, 1, 3, 7, &arr) == CVRPAOA_OK);
    const std::string list = take(arr);
    EXPECT(list.front() == '[');
    EXPECT(cvrpaoa_generate(3, 2, 4, 3, 1, 7, &arr) == CVRPAOA_ERROR_VALIDATION);

    cvrpaoa_instance *two = nullptr;
    EXPECT(cvrpaoa_instance_from_json(
               "{\"name\":\"two\",\"capacity\":3,\"depot\":[0,0],\"customers\":"
               "[{\"x\":1,\"y\":0,\"demand\":2},{\"x\":0,\"y\":1,\"demand\":2}],"
               "\"distance\":\"euclidean\"}",
               &two) == CVRPAOA_OK);
    cvrpaoa_run_options o;
    cvrpaoa_run_options_default(&o);
    o.depth = 0;
    cvrpaoa_result *r = nullptr;
    EXPECT(cvrpaoa_run_qubo(two, &o, &r) == CVRPAOA_OK);
    double r_feas = 2.0;
    EXPECT(cvrpaoa_result_metrics(r, nullptr, nullptr, &r_feas) == CVRPAOA_OK);
    EXPECT(r_feas > 0.0 && r_feas < 1.0);
    char *js = nullptr;
    cvrpaoa_result_to_json(r, &js);
    EXPECT(take(js).find("qubo-qaoa") != std::string::npos);
    cvrpaoa_result_free(r);
    cvrpaoa_instance_free(two);
}

void budgets() {
    cvrpaoa_register_widths w;
    EXPECT(cvrpaoa_qubit_budget(4, 3, 2, &w) == CVRPAOA_OK);
    EXPECT(w.total == 33 && w.closed_form_total == 27 && w.mismatch == 1);
    EXPECT(w.x == 16 && w.y == 3 && w.a == 3 && w.d == 3 && w.c == 4 && w.r == 4);
    EXPECT(cvrpaoa_qubit_budget(0, 3, 2, &w) == CVRPAOA_ERROR_VALIDATION);
    char *js = nullptr;
    EXPECT(cvrpaoa_gate_counts(4, 3, 2, CVRPAOA_MIXER_RING, &js) == CVRPAOA_OK);
    EXPECT(take(js).find("total") != std::string::npos);
}

void experiments() {
    cvrpaoa_experiment_options e;
    cvrpaoa_experiment_options_default(&e);
    EXPECT(e.starts == 20 && e.p3s_count == 48);
    e.starts = 1;
    e.budget = 10;
    e.p3s_count = 2;
    e.p3s_max_depth = 1;
    char *table = nullptr;
    EXPECT(cvrpaoa_experiment("p3s", 7, &e, &table, nullptr) == CVRPAOA_OK);
    EXPECT(take(table).find("P3s mean p=1") != std::string::npos);
    EXPECT(cvrpaoa_experiment("bogus", 7, &e, nullptr, nullptr) == CVRPAOA_ERROR_VALIDATION);
    EXPECT(std::string(cvrpaoa_version()).size() > 0);
}

} // namespace

int main() {
    instances();
    runs();
    small_qubo();
    budgets();
    experiments();
    std::printf("%s: %d failure(s)\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
