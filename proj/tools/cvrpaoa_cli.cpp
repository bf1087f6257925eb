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
// Command-line front end. Talks to the library only through cvrpaoa.h.

#include "cvrpaoa/cvrpaoa.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

namespace {

struct Failure {
    int status;
};

void check(int status) {
    if (status != CVRPAOA_OK) {
        throw Failure{status};
    }
}

struct OwnedString {
    char *p = nullptr;
    ~OwnedString() { cvrpaoa_string_free(p); }
    [[nodiscard]] std::string str() const { return p ? std::string(p) : std::string(); }
};

using InstancePtr = std::unique_ptr<cvrpaoa_instance, decltype(&cvrpaoa_instance_free)>;
using ResultPtr = std::unique_ptr<cvrpaoa_result, decltype(&cvrpaoa_result_free)>;

InstancePtr open_instance(const std::string &spec) {
    cvrpaoa_instance *raw = nullptr;
    check(cvrpaoa_instance_open(spec.c_str(), &raw));
    return InstancePtr(raw, &cvrpaoa_instance_free);
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot write " << path << '\n';
        throw Failure{CVRPAOA_ERROR_VALIDATION};
    }
    f << text;
    if (!text.empty() && text.back() != '\n') {
        f << '\n';
    }
}

int mixer_code(const std::string &m) {
    return m == "ring" ? CVRPAOA_MIXER_RING : CVRPAOA_MIXER_GROVER;
}

int backend_code(const std::string &b) {
    return b == "gate" ? CVRPAOA_BACKEND_GATE : CVRPAOA_BACKEND_SUBSPACE;
}

void print_metrics(const cvrpaoa_result *res, const char *tag) {
    double alpha = 0.0, r_opt = 0.0, r_feas = 0.0;
    check(cvrpaoa_result_metrics(res, &alpha, &r_opt, &r_feas));
    std::fprintf(stderr, "%s: alpha=%.6g r_opt=%.6g r_feas=%.6g\n", tag, alpha,
                 r_opt, r_feas);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Feasibility-preserving AOA solver for capacitated vehicle routing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cvrpaoa_version()));

    // gen
    auto *gen = app.add_subcommand("gen", "Generate random instances");
    int gen_customers = 3, gen_count = 48, gen_capacity = 4, gen_lo = 1, gen_hi = 3;
    std::uint64_t gen_seed = 7;
    std::string gen_out, gen_dir;
    gen->add_option("--customers", gen_customers, "Customers per instance")->capture_default_str();
    gen->add_option("--count", gen_count, "Number of instances")->capture_default_str();
    gen->add_option("--capacity", gen_capacity, "Vehicle capacity Q")->capture_default_str();
    gen->add_option("--demand-lo", gen_lo, "Smallest demand")->capture_default_str();
    gen->add_option("--demand-hi", gen_hi, "Largest demand")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Write the JSON array here instead of stdout");
    gen->add_option("--out-dir", gen_dir, "Write one <name>.json per instance");

    // solve-exact
    auto *solve = app.add_subcommand("solve-exact", "Brute-force optimum over the encoding space");
    std::string solve_inst, solve_out;
    solve->add_option("--instance", solve_inst, "Instance file or builtin name (p1, p2, p1-alt)")->required();
    solve->add_option("--out", solve_out, "Output file");

    // run
    auto *run = app.add_subcommand("run", "Optimize and measure the AOA circuit");
    std::string run_inst, run_mixer = "grover", run_backend = "subspace", run_out;
    cvrpaoa_run_options run_opts;
    cvrpaoa_run_options_default(&run_opts);
    run->add_option("--instance", run_inst, "Instance file or builtin name")->required();
    run->add_option("--mixer", run_mixer, "Mixer")->check(CLI::IsMember({"grover", "ring"}))->capture_default_str();
    run->add_option("--depth", run_opts.depth, "Circuit depth p")->capture_default_str();
    run->add_option("--backend", run_backend, "Simulation backend")->check(CLI::IsMember({"gate", "subspace"}))->capture_default_str();
    run->add_option("--starts", run_opts.starts, "Optimizer starts")->capture_default_str();
    run->add_option("--budget", run_opts.budget, "Evaluations per start")->capture_default_str();
    run->add_option("--seed", run_opts.seed, "Seed")->capture_default_str();
    run->add_option("--out", run_out, "Result JSON file");

    // baseline-qubo
    auto *qubo = app.add_subcommand("baseline-qubo", "Penalty-QUBO QAOA baseline");
    std::string qubo_inst, qubo_out;
    cvrpaoa_run_options qubo_opts;
    cvrpaoa_run_options_default(&qubo_opts);
    qubo_opts.starts = 2;
    qubo_opts.budget = 40;
    qubo->add_option("--instance", qubo_inst, "Instance file or builtin name")->required();
    qubo->add_option("--depth", qubo_opts.depth, "Circuit depth p (0 = Hadamard start only)")->capture_default_str();
    qubo->add_option("--starts", qubo_opts.starts, "Optimizer starts")->capture_default_str();
    qubo->add_option("--budget", qubo_opts.budget, "Evaluations per start")->capture_default_str();
    qubo->add_option("--seed", qubo_opts.seed, "Seed")->capture_default_str();
    qubo->add_option("--out", qubo_out, "Result JSON file");

    // landscape
    auto *land = app.add_subcommand("landscape", "Depth-1 energy grid as CSV");
    std::string land_inst, land_mixer = "grover", land_grid = "64x64", land_out;
    double gamma_max = 6.283185307179586, beta_max = 6.283185307179586;
    land->add_option("--instance", land_inst, "Instance file or builtin name")->required();
    land->add_option("--mixer", land_mixer, "Mixer")->check(CLI::IsMember({"grover", "ring"}))->capture_default_str();
    land->add_option("--grid", land_grid, "Grid size GxB")->capture_default_str();
    land->add_option("--gamma-max", gamma_max, "Upper end of the gamma axis")->capture_default_str();
    land->add_option("--beta-max", beta_max, "Upper end of the beta axis")->capture_default_str();
    land->add_option("--out", land_out, "CSV file");

    // experiment
    auto *exp = app.add_subcommand("experiment", "Run a reference experiment preset");
    std::string preset, exp_out;
    std::uint64_t exp_seed = 7;
    cvrpaoa_experiment_options exp_opts;
    cvrpaoa_experiment_options_default(&exp_opts);
    exp->add_option("--preset", preset, "p1, p2, p2-depth2, p3s or qubo-compare")
        ->required()
        ->check(CLI::IsMember({"p1", "p2", "p2-depth2", "p3s", "qubo-compare"}));
    exp->add_option("--seed", exp_seed, "Seed for instances and optimizer")->capture_default_str();
    exp->add_option("--starts", exp_opts.starts, "Optimizer starts")->capture_default_str();
    exp->add_option("--budget", exp_opts.budget, "Evaluations per start")->capture_default_str();
    exp->add_option("--qubo-starts", exp_opts.qubo_starts, "Baseline optimizer starts")->capture_default_str();
    exp->add_option("--qubo-budget", exp_opts.qubo_budget, "Baseline evaluations per start")->capture_default_str();
    exp->add_option("--out", exp_out, "Full report JSON file");

    // budget
    auto *bud = app.add_subcommand("budget", "Qubit budget and analytic gate counts");
    int bud_n = 4, bud_q = 3, bud_maxq = 2, bud_p = 1;
    std::string bud_mixer = "grover";
    bud->add_option("--customers", bud_n, "N")->capture_default_str();
    bud->add_option("--capacity", bud_q, "Q")->capture_default_str();
    bud->add_option("--max-demand", bud_maxq, "max(q)")->capture_default_str();
    bud->add_option("--depth", bud_p, "p")->capture_default_str();
    bud->add_option("--mixer", bud_mixer, "Mixer")->check(CLI::IsMember({"grover", "ring"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : CVRPAOA_ERROR_VALIDATION;
    }

    try {
        if (*gen) {
            OwnedString out;
            check(cvrpaoa_generate(gen_customers, gen_count, gen_capacity, gen_lo,
                                   gen_hi, gen_seed, &out.p));
            if (!gen_dir.empty()) {
                std::filesystem::create_directories(gen_dir);
                for (const auto &doc : nlohmann::json::parse(out.str())) {
                    const auto name = doc.at("name").get<std::string>();
                    write_output((std::filesystem::path(gen_dir) / (name + ".json")).string(),
                                 doc.dump(2));
                }
            } else {
                write_output(gen_out, out.str());
            }
        } else if (*solve) {
            auto inst = open_instance(solve_inst);
            OwnedString out;
            check(cvrpaoa_solve_exact(inst.get(), &out.p));
            write_output(solve_out, out.str());
        } else if (*run) {
            auto inst = open_instance(run_inst);
            run_opts.mixer = mixer_code(run_mixer);
            run_opts.backend = backend_code(run_backend);
            cvrpaoa_result *raw = nullptr;
            check(cvrpaoa_run(inst.get(), &run_opts, &raw));
            ResultPtr res(raw, &cvrpaoa_result_free);
            print_metrics(res.get(), "aoa");
            OwnedString out;
            check(cvrpaoa_result_to_json(res.get(), &out.p));
            write_output(run_out, out.str());
        } else if (*qubo) {
            auto inst = open_instance(qubo_inst);
            cvrpaoa_result *raw = nullptr;
            check(cvrpaoa_run_qubo(inst.get(), &qubo_opts, &raw));
            ResultPtr res(raw, &cvrpaoa_result_free);
            print_metrics(res.get(), "qubo-qaoa");
            OwnedString out;
            check(cvrpaoa_result_to_json(res.get(), &out.p));
            write_output(qubo_out, out.str());
        } else if (*land) {
            int g = 0, b = 0;
            char x = 0;
            if (std::sscanf(land_grid.c_str(), "%d%c%d", &g, &x, &b) != 3 ||
                (x != 'x' && x != 'X')) {
                std::cerr << "error: --grid expects GxB, e.g. 64x64\n";
                return CVRPAOA_ERROR_VALIDATION;
            }
            auto inst = open_instance(land_inst);
            OwnedString out;
            check(cvrpaoa_landscape(inst.get(), mixer_code(land_mixer), g, b,
                                    gamma_max, beta_max, &out.p));
            write_output(land_out, out.str());
        } else if (*exp) {
            OwnedString table;
            OwnedString json;
            check(cvrpaoa_experiment(preset.c_str(), exp_seed, &exp_opts, &table.p,
                                     exp_out.empty() ? nullptr : &json.p));
            std::cout << table.str();
            if (!exp_out.empty()) {
                write_output(exp_out, json.str());
            }
        } else if (*bud) {
            cvrpaoa_register_widths qb;
            check(cvrpaoa_qubit_budget(bud_n, bud_q, bud_maxq, &qb));
            OwnedString counts;
            check(cvrpaoa_gate_counts(bud_n, bud_q, bud_p, mixer_code(bud_mixer), &counts.p));
            nlohmann::ordered_json j;
            j["qubits"] = {{"x", qb.x}, {"y", qb.y}, {"a", qb.a}, {"d", qb.d},
                           {"c", qb.c}, {"r", qb.r}, {"total", qb.total},
                           {"paper_formula", qb.closed_form_total},
                           {"mismatch", qb.mismatch != 0}};
            j["gates"] = nlohmann::ordered_json::parse(counts.str());
            write_output("", j.dump(2));
        }
    } catch (const Failure &f) {
        std::cerr << "error: " << cvrpaoa_last_error() << '\n';
        return f.status;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return CVRPAOA_ERROR_INTERNAL;
    }
    return 0;
}
