/***********************************************************************
*
*  Copyright 2026 The mhdd authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*
************************************************************************/

/* C interface to the mhdd solver and verification harness.
 *
 * Every function returns an mhdd_status. On failure a message is available
 * from mhdd_last_error() until the next call on the same thread. Handles are
 * opaque and must be released with the matching *_free function; passing
 * NULL to a *_free function is a no-op.
 */
#ifndef MHDD_MHDD_H
#define MHDD_MHDD_H

#include <stddef.h>
#include <stdint.h>

#if defined(MHDD_BUILDING_LIBRARY)
#define MHDD_API __attribute__((visibility("default")))
#else
#define MHDD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mhdd_status {
  MHDD_OK = 0,
  MHDD_ERR_USAGE = 1,      /* invalid argument or configuration value */
  MHDD_CHECK_FAILED = 2,   /* a requested check reported FAIL */
  MHDD_BLOWUP = 3,         /* non-finite state during a run */
  MHDD_ERR_IO = 4,         /* file system failure */
  MHDD_ERR_PARSE = 5,      /* malformed config or data file */
  MHDD_ERR_INTERNAL = 6
} mhdd_status;

typedef struct mhdd_config mhdd_config;
typedef struct mhdd_solver mhdd_solver;

MHDD_API const char* mhdd_version(void);
MHDD_API const char* mhdd_last_error(void);
MHDD_API const char* mhdd_status_name(mhdd_status status);

/* Caps internal data parallelism; 0 restores the default. */
MHDD_API mhdd_status mhdd_set_threads(int threads);

/* --- configuration ------------------------------------------------------ */

MHDD_API mhdd_status mhdd_config_default(mhdd_config** out);
MHDD_API mhdd_status mhdd_config_load(const char* path, mhdd_config** out);
MHDD_API mhdd_status mhdd_config_parse(const char* json_text, mhdd_config** out);
MHDD_API void mhdd_config_free(mhdd_config* config);

MHDD_API mhdd_status mhdd_config_set_seed(mhdd_config* config, uint64_t seed);
MHDD_API mhdd_status mhdd_config_set_output_dir(mhdd_config* config, const char* dir);
MHDD_API mhdd_status mhdd_config_set_threads(mhdd_config* config, int threads);
MHDD_API mhdd_status mhdd_config_set_epsilon(mhdd_config* config, double epsilon);
/* MHDD_OUT_DIR and MHDD_THREADS override the output directory and thread count. */
MHDD_API mhdd_status mhdd_config_apply_environment(mhdd_config* config);

/* Serialized JSON. Writes at most `capacity` bytes including the
 * terminator; *required receives the full size including the terminator. */
MHDD_API mhdd_status mhdd_config_to_json(const mhdd_config* config, char* buffer, size_t capacity,
                                         size_t* required);
MHDD_API mhdd_status mhdd_config_hash(const mhdd_config* config, uint64_t* hash);

/* --- experiments -------------------------------------------------------- */

typedef struct mhdd_run_report {
  int exit_status;      /* 0 ok, 2 check failed, 3 blow-up */
  long long steps;
  double t_final;
  int blew_up;
  double blowup_time;
  int checks_total;
  int checks_failed;
} mhdd_run_report;

/* run + energy checks; files go to the configured output directory.
 * Returns MHDD_OK, MHDD_CHECK_FAILED or MHDD_BLOWUP on completion. */
MHDD_API mhdd_status mhdd_run_experiment(const mhdd_config* config, mhdd_run_report* report);

typedef struct mhdd_twin_report {
  int exit_status;
  double epsilon;
  double d0;
  double d_final;
  double c_hat;
  int bound_holds;
  int determinism_ok;
  int blew_up;
} mhdd_twin_report;

MHDD_API mhdd_status mhdd_run_twin(const mhdd_config* config, mhdd_twin_report* report);

typedef struct mhdd_lemma_matrix {
  const double* alphas;
  size_t n_alphas;
  const double* betas;
  size_t n_betas;
  const char* const* modifiers; /* "log1", "log2", "log3" */
  size_t n_modifiers;
  size_t pair_samples;          /* 0 selects 100000 */
  size_t x_points;              /* 0 selects 10000 */
  uint64_t seed;
} mhdd_lemma_matrix;

/* Fills a matrix with the default {0.1,1,10} x {3.5,4,5,7} x {log1,log2,log3}. */
MHDD_API void mhdd_lemma_matrix_default(mhdd_lemma_matrix* matrix);

typedef struct mhdd_lemma_report {
  int exit_status;
  int interpolation_cells;
  int interpolation_failed;
  int interpolation_not_applicable;
  int monotonicity_cells;
  int monotonicity_failed;
  double monotonicity_worst_margin;
} mhdd_lemma_report;

/* Writes <out_dir>/lemmas/*.csv. An empty matrix is MHDD_ERR_USAGE. */
MHDD_API mhdd_status mhdd_run_lemmas(const mhdd_lemma_matrix* matrix, const char* out_dir,
                                     mhdd_lemma_report* report);

/* --- stepping ----------------------------------------------------------- */

MHDD_API mhdd_status mhdd_solver_create(const mhdd_config* config, mhdd_solver** out);
MHDD_API void mhdd_solver_free(mhdd_solver* solver);
/* Advances by `steps` steps of the configured dt. */
MHDD_API mhdd_status mhdd_solver_step(mhdd_solver* solver, long long steps);
MHDD_API mhdd_status mhdd_solver_time(const mhdd_solver* solver, double* t);
/* Ledger columns of the current state (running integrals are zero). */
MHDD_API size_t mhdd_ledger_column_count(void);
MHDD_API const char* mhdd_ledger_column_name(size_t index);
MHDD_API mhdd_status mhdd_solver_diagnostics(const mhdd_solver* solver, double* values, size_t count);
MHDD_API mhdd_status mhdd_solver_save_checkpoint(const mhdd_solver* solver, const char* path);

/* --- constants ---------------------------------------------------------- */

MHDD_API mhdd_status mhdd_c_alpha_beta(double alpha, double beta, double* out);
MHDD_API mhdd_status mhdd_a_alpha(double alpha, const char* modifier, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MHDD_MHDD_H */
