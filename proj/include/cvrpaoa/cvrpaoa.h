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
/*
 * C interface of the cvrpaoa shared library.
 *
 * Every function returning int returns a cvrpaoa_status. On failure the
 * message is available from cvrpaoa_last_error() on the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with cvrpaoa_string_free().
 */
#ifndef CVRPAOA_H
#define CVRPAOA_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(CVRPAOA_BUILDING)
#define CVRPAOA_API __declspec(dllexport)
#else
#define CVRPAOA_API __declspec(dllimport)
#endif
#else
#define CVRPAOA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvrpaoa_status {
    CVRPAOA_OK = 0,
    CVRPAOA_ERROR_INTERNAL = 1,
    CVRPAOA_ERROR_VALIDATION = 2,
    CVRPAOA_ERROR_RESOURCE = 3
} cvrpaoa_status;

typedef enum cvrpaoa_mixer {
    CVRPAOA_MIXER_GROVER = 0,
    CVRPAOA_MIXER_RING = 1
} cvrpaoa_mixer;

typedef enum cvrpaoa_backend {
    CVRPAOA_BACKEND_SUBSPACE = 0,
    CVRPAOA_BACKEND_GATE = 1
} cvrpaoa_backend;

typedef struct cvrpaoa_instance cvrpaoa_instance;
typedef struct cvrpaoa_result cvrpaoa_result;

typedef struct cvrpaoa_run_options {
    int mixer;   /* cvrpaoa_mixer */
    int backend; /* cvrpaoa_backend; ignored by the QUBO baseline */
    int depth;
    int starts;
    int budget;
    uint64_t seed;
} cvrpaoa_run_options;

typedef struct cvrpaoa_experiment_options {
    int starts;
    int budget;
    int qubo_starts;
    int qubo_budget;
    int qubo_instances;
    int p3s_count;
    int p3s_max_depth;
} cvrpaoa_experiment_options;

typedef struct cvrpaoa_register_widths {
    int x, y, a, d, c, r;
    int total;
    long long closed_form_total;
    int mismatch;
} cvrpaoa_register_widths;

CVRPAOA_API const char *cvrpaoa_version(void);
/* Message of the last failed call on this thread, "" if none. */
CVRPAOA_API const char *cvrpaoa_last_error(void);
CVRPAOA_API void cvrpaoa_string_free(char *s);

CVRPAOA_API int cvrpaoa_instance_from_json(const char *json, cvrpaoa_instance **out);
CVRPAOA_API int cvrpaoa_instance_from_file(const char *path, cvrpaoa_instance **out);
/* "p1", "p2" or "p1-alt". */
CVRPAOA_API int cvrpaoa_instance_builtin(const char *name, cvrpaoa_instance **out);
/* A builtin name if it is one, otherwise a file path. */
CVRPAOA_API int cvrpaoa_instance_open(const char *spec, cvrpaoa_instance **out);
CVRPAOA_API int cvrpaoa_instance_to_json(const cvrpaoa_instance *inst, char **out);
CVRPAOA_API int cvrpaoa_instance_num_customers(const cvrpaoa_instance *inst, int *out);
CVRPAOA_API void cvrpaoa_instance_free(cvrpaoa_instance *inst);

/* JSON array of instance documents. */
CVRPAOA_API int cvrpaoa_generate(int customers, int count, int capacity,
                                 int demand_lo, int demand_hi, uint64_t seed,
                                 char **out_json);
/* {"instance", "min_cost", "optima": [[route, ...], ...], "optimal_encodings"} */
CVRPAOA_API int cvrpaoa_solve_exact(const cvrpaoa_instance *inst, char **out_json);

CVRPAOA_API void cvrpaoa_run_options_default(cvrpaoa_run_options *opts);
CVRPAOA_API int cvrpaoa_run(const cvrpaoa_instance *inst,
                            const cvrpaoa_run_options *opts, cvrpaoa_result **out);
/* depth 0 evaluates the Hadamard start without optimizing. */
CVRPAOA_API int cvrpaoa_run_qubo(const cvrpaoa_instance *inst,
                                 const cvrpaoa_run_options *opts,
                                 cvrpaoa_result **out);
CVRPAOA_API int cvrpaoa_result_to_json(const cvrpaoa_result *res, char **out);
CVRPAOA_API int cvrpaoa_result_metrics(const cvrpaoa_result *res, double *alpha,
                                       double *r_opt, double *r_feas);
CVRPAOA_API void cvrpaoa_result_free(cvrpaoa_result *res);

/* CSV with columns gamma,beta,energy. */
CVRPAOA_API int cvrpaoa_landscape(const cvrpaoa_instance *inst, int mixer,
                                  int gamma_steps, int beta_steps,
                                  double gamma_max, double beta_max,
                                  char **out_csv);

CVRPAOA_API void cvrpaoa_experiment_options_default(cvrpaoa_experiment_options *opts);
/* Either output pointer may be NULL. */
CVRPAOA_API int cvrpaoa_experiment(const char *preset, uint64_t seed,
                                   const cvrpaoa_experiment_options *opts,
                                   char **out_table, char **out_json);

CVRPAOA_API int cvrpaoa_qubit_budget(int customers, int capacity, int max_demand,
                                     cvrpaoa_register_widths *out);
/* Analytic gate counts as JSON. */
CVRPAOA_API int cvrpaoa_gate_counts(int customers, int capacity, int depth,
                                    int mixer, char **out_json);

#ifdef __cplusplus
}
#endif

#endif /* CVRPAOA_H */
