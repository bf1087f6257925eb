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
#include "cvrpaoa/cvrpaoa.h"

#include "cvrpaoa/ansatz.hpp"
#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/harness.hpp"
#include "cvrpaoa/qubo.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

struct cvrpaoa_instance {
    cvrpaoa::Instance inst;
};

struct cvrpaoa_result {
    cvrpaoa::RunResult run;
};

namespace {

thread_local std::string last_error;

template <class F> int guarded(F &&f) {
    try {
        f();
        last_error.clear();
        return CVRPAOA_OK;
    } catch (const cvrpaoa::ValidationError &e) {
        last_error = e.what();
        return CVRPAOA_ERROR_VALIDATION;
    } catch (const cvrpaoa::ResourceError &e) {
        last_error = e.what();
        return CVRPAOA_ERROR_RESOURCE;
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return CVRPAOA_ERROR_RESOURCE;
    } catch (const std::exception &e) {
        last_error = e.what();
        return CVRPAOA_ERROR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return CVRPAOA_ERROR_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (p == nullptr) {
        throw cvrpaoa::ValidationError(std::string(what) + " must not be NULL");
    }
}

char *dup(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cvrpaoa::Mixer to_mixer(int m) {
    switch (m) {
    case CVRPAOA_MIXER_GROVER:
        return cvrpaoa::Mixer::Grover;
    case CVRPAOA_MIXER_RING:
        return cvrpaoa::Mixer::Ring;
    default:
        throw cvrpaoa::ValidationError("unknown mixer code " + std::to_string(m));
    }
}

cvrpaoa::Backend to_backend(int b) {
    switch (b) {
    case CVRPAOA_BACKEND_SUBSPACE:
        return cvrpaoa::Backend::Subspace;
    case CVRPAOA_BACKEND_GATE:
        return cvrpaoa::Backend::Gate;
    default:
        throw cvrpaoa::ValidationError("unknown backend code " + std::to_string(b));
    }
}

cvrpaoa::MultiStartConfig optimizer_of(const cvrpaoa_run_options &o) {
    cvrpaoa::MultiStartConfig c;
    c.starts = o.starts;
    c.budget = o.budget;
    c.seed = o.seed;
    return c;
}

} // namespace

extern "C" {

const char *cvrpaoa_version(void) { return CVRPAOA_VERSION_STRING; }

const char *cvrpaoa_last_error(void) { return last_error.c_str(); }

void cvrpaoa_string_free(char *s) { std::free(s); }

int cvrpaoa_instance_from_json(const char *json, cvrpaoa_instance **out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new cvrpaoa_instance{cvrpaoa::load_instance(json)};
    });
}

int cvrpaoa_instance_from_file(const char *path, cvrpaoa_instance **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new cvrpaoa_instance{cvrpaoa::load_instance_file(path)};
    });
}

int cvrpaoa_instance_builtin(const char *name, cvrpaoa_instance **out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = new cvrpaoa_instance{cvrpaoa::builtin_instance(name)};
    });
}

int cvrpaoa_instance_open(const char *spec, cvrpaoa_instance **out) {
    return guarded([&] {
        require(spec, "spec");
        require(out, "out");
        const std::string s(spec);
        for (const auto &name : cvrpaoa::builtin_names()) {
            if (s == name && !std::filesystem::exists(s)) {
                *out = new cvrpaoa_instance{cvrpaoa::builtin_instance(s)};
                return;
            }
        }
        *out = new cvrpaoa_instance{cvrpaoa::load_instance_file(s)};
    });
}

int cvrpaoa_instance_to_json(const cvrpaoa_instance *inst, char **out) {
    return guarded([&] {
        require(inst, "instance");
        require(out, "out");
        *out = dup(cvrpaoa::instance_to_json(inst->inst));
    });
}

int cvrpaoa_instance_num_customers(const cvrpaoa_instance *inst, int *out) {
    return guarded([&] {
        require(inst, "instance");
        require(out, "out");
        *out = inst->inst.num_customers();
    });
}

void cvrpaoa_instance_free(cvrpaoa_instance *inst) { delete inst; }

int cvrpaoa_generate(int customers, int count, int capacity, int demand_lo,
                     int demand_hi, uint64_t seed, char **out_json) {
    return guarded([&] {
        require(out_json, "out_json");
        cvrpaoa::GeneratorConfig g;
        g.customers = customers;
        g.count = count;
        g.capacity = capacity;
        g.demand_lo = demand_lo;
        g.demand_hi = demand_hi;
        g.seed = seed;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto &inst : cvrpaoa::generate_instances(g)) {
            arr.push_back(nlohmann::ordered_json::parse(cvrpaoa::instance_to_json(inst)));
        }
        *out_json = dup(arr.dump(2));
    });
}

int cvrpaoa_solve_exact(const cvrpaoa_instance *inst, char **out_json) {
    return guarded([&] {
        require(inst, "instance");
        require(out_json, "out_json");
        const auto r = cvrpaoa::exact_solve(inst->inst);
        nlohmann::ordered_json j;
        j["instance"] = inst->inst.name();
        j["min_cost"] = r.min_cost;
        nlohmann::ordered_json optima = nlohmann::ordered_json::array();
        for (const auto &s : r.optima) {
            optima.push_back(s.canonical_routes());
        }
        j["optima"] = std::move(optima);
        j["optimal_encodings"] = r.optimal_encodings;
        *out_json = dup(j.dump(2));
    });
}

void cvrpaoa_run_options_default(cvrpaoa_run_options *opts) {
    if (opts == nullptr) {
        return;
    }
    const cvrpaoa::MultiStartConfig d;
    opts->mixer = CVRPAOA_MIXER_GROVER;
    opts->backend = CVRPAOA_BACKEND_SUBSPACE;
    opts->depth = 1;
    opts->starts = d.starts;
    opts->budget = d.budget;
    opts->seed = d.seed;
}

int cvrpaoa_run(const cvrpaoa_instance *inst, const cvrpaoa_run_options *opts,
                cvrpaoa_result **out) {
    return guarded([&] {
        require(inst, "instance");
        require(opts, "options");
        require(out, "out");
        cvrpaoa::AoaConfig c;
        c.mixer = to_mixer(opts->mixer);
        c.backend = to_backend(opts->backend);
        c.p = opts->depth;
        c.optimizer = optimizer_of(*opts);
        *out = new cvrpaoa_result{cvrpaoa::run_aoa(inst->inst, c)};
    });
}

int cvrpaoa_run_qubo(const cvrpaoa_instance *inst, const cvrpaoa_run_options *opts,
                     cvrpaoa_result **out) {
    return guarded([&] {
        require(inst, "instance");
        require(opts, "options");
        require(out, "out");
        cvrpaoa::QuboConfig c;
        c.penalty = cvrpaoa::PenaltyConfig::defaults(inst->inst);
        c.p = opts->depth;
        c.optimizer = optimizer_of(*opts);
        *out = new cvrpaoa_result{cvrpaoa::run_qubo_qaoa(inst->inst, c)};
    });
}

int cvrpaoa_result_to_json(const cvrpaoa_result *res, char **out) {
    return guarded([&] {
        require(res, "result");
        require(out, "out");
        *out = dup(cvrpaoa::to_json(res->run));
    });
}

int cvrpaoa_result_metrics(const cvrpaoa_result *res, double *alpha, double *r_opt,
                           double *r_feas) {
    return guarded([&] {
        require(res, "result");
        if (alpha != nullptr) {
            *alpha = res->run.metrics.alpha;
        }
        if (r_opt != nullptr) {
            *r_opt = res->run.metrics.r_opt;
        }
        if (r_feas != nullptr) {
            *r_feas = res->run.metrics.r_feas;
        }
    });
}

void cvrpaoa_result_free(cvrpaoa_result *res) { delete res; }

int cvrpaoa_landscape(const cvrpaoa_instance *inst, int mixer, int gamma_steps,
                      int beta_steps, double gamma_max, double beta_max,
                      char **out_csv) {
    return guarded([&] {
        require(inst, "instance");
        require(out_csv, "out_csv");
        cvrpaoa::LandscapeSpec spec;
        spec.mixer = to_mixer(mixer);
        spec.gamma_steps = gamma_steps;
        spec.beta_steps = beta_steps;
        spec.gamma_max = gamma_max;
        spec.beta_max = beta_max;
        *out_csv = dup(cvrpaoa::landscape_scan(inst->inst, spec).to_csv());
    });
}

void cvrpaoa_experiment_options_default(cvrpaoa_experiment_options *opts) {
    if (opts == nullptr) {
        return;
    }
    const cvrpaoa::ExperimentOptions d;
    opts->starts = d.starts;
    opts->budget = d.budget;
    opts->qubo_starts = d.qubo_starts;
    opts->qubo_budget = d.qubo_budget;
    opts->qubo_instances = d.qubo_instances;
    opts->p3s_count = d.p3s_count;
    opts->p3s_max_depth = d.p3s_max_depth;
}

int cvrpaoa_experiment(const char *preset, uint64_t seed,
                       const cvrpaoa_experiment_options *opts, char **out_table,
                       char **out_json) {
    return guarded([&] {
        require(preset, "preset");
        cvrpaoa::ExperimentOptions o;
        if (opts != nullptr) {
            o.starts = opts->starts;
            o.budget = opts->budget;
            o.qubo_starts = opts->qubo_starts;
            o.qubo_budget = opts->qubo_budget;
            o.qubo_instances = opts->qubo_instances;
            o.p3s_count = opts->p3s_count;
            o.p3s_max_depth = opts->p3s_max_depth;
        }
        const auto rep = cvrpaoa::run_experiment(preset, seed, o);
        char *table = out_table ? dup(rep.table()) : nullptr;
        try {
            if (out_json) {
                *out_json = dup(rep.to_json());
            }
        } catch (...) {
            std::free(table);
            throw;
        }
        if (out_table) {
            *out_table = table;
        }
    });
}

int cvrpaoa_qubit_budget(int customers, int capacity, int max_demand,
                         cvrpaoa_register_widths *out) {
    return guarded([&] {
        require(out, "out");
        const auto b = cvrpaoa::qubit_budget(customers, capacity, max_demand);
        *out = cvrpaoa_register_widths{b.x, b.y, b.a, b.d, b.c, b.r, b.total,
                                    b.closed_form_total, b.mismatch ? 1 : 0};
    });
}

int cvrpaoa_gate_counts(int customers, int capacity, int depth, int mixer,
                        char **out_json) {
    return guarded([&] {
        require(out_json, "out_json");
        const auto r =
            cvrpaoa::gate_count_report(customers, capacity, depth, to_mixer(mixer));
        const auto counts = [](const cvrpaoa::GateCounts &g) {
            return nlohmann::ordered_json{{"toffoli", g.toffoli},
                                          {"cnot", g.cnot},
                                          {"single", g.single},
                                          {"total", g.total()}};
        };
        nlohmann::ordered_json j;
        j["customers"] = r.n;
        j["capacity"] = r.capacity;
        j["p"] = r.p;
        j["mixer"] = cvrpaoa::mixer_name(r.mixer);
        j["prep"] = counts(r.prep);
        j["encoder"] = counts(r.encoder);
        j["diagonal"] = counts(r.diagonal);
        j["mixer_layer"] = counts(r.mixer_layer);
        j["per_layer"] = counts(r.per_layer);
        j["total"] = counts(r.total);
        *out_json = dup(j.dump(2));
    });
}

} // extern "C"
