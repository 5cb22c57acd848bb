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

#include "mhdd/mhdd.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "mhdd/checkpoint.hpp"
#include "mhdd/config.hpp"
#include "mhdd/energy.hpp"
#include "mhdd/error.hpp"
#include "mhdd/experiments.hpp"
#include "mhdd/fft.hpp"
#include "mhdd/integrator.hpp"
#include "mhdd/lemmas.hpp"

struct mhdd_config {
  mhdd::ExperimentConfig value;
};

struct mhdd_solver {
  mhdd::SolverConfig config;
  mhdd::MhdState state;
  mhdd::Integrator integrator;
};

namespace {

thread_local std::string g_last_error;

mhdd_status fail(mhdd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps exceptions escaping `fn` to status codes.
template <class Fn>
mhdd_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const mhdd::BlowUp& e) {
    return fail(MHDD_BLOWUP, e.what());
  } catch (const mhdd::NonFiniteError& e) {
    return fail(MHDD_BLOWUP, e.what());
  } catch (const mhdd::ParseError& e) {
    return fail(MHDD_ERR_PARSE, e.what());
  } catch (const mhdd::IoError& e) {
    return fail(MHDD_ERR_IO, e.what());
  } catch (const mhdd::InvalidArgument& e) {
    return fail(MHDD_ERR_USAGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MHDD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MHDD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MHDD_ERR_INTERNAL, "unknown error");
  }
}

mhdd_status status_of(int exit_status) {
  switch (exit_status) {
    case mhdd::kExitOk:
      return MHDD_OK;
    case mhdd::kExitCheckFailed:
      return MHDD_CHECK_FAILED;
    case mhdd::kExitBlowUp:
      return MHDD_BLOWUP;
    default:
      return MHDD_ERR_USAGE;
  }
}

#define MHDD_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) return fail(MHDD_ERR_USAGE, msg); \
  } while (0)

}  // namespace

extern "C" {

const char* mhdd_version(void) { return "1.0.0"; }

const char* mhdd_last_error(void) { return g_last_error.c_str(); }

const char* mhdd_status_name(mhdd_status status) {
  switch (status) {
    case MHDD_OK:
      return "ok";
    case MHDD_ERR_USAGE:
      return "usage error";
    case MHDD_CHECK_FAILED:
      return "check failed";
    case MHDD_BLOWUP:
      return "blow-up";
    case MHDD_ERR_IO:
      return "i/o error";
    case MHDD_ERR_PARSE:
      return "parse error";
    case MHDD_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

mhdd_status mhdd_set_threads(int threads) {
  return guarded([&] {
    mhdd::set_thread_count(threads);
    return MHDD_OK;
  });
}

mhdd_status mhdd_config_default(mhdd_config** out) {
  MHDD_REQUIRE(out, "mhdd_config_default: null output pointer");
  return guarded([&] {
    *out = new mhdd_config{};
    return MHDD_OK;
  });
}

mhdd_status mhdd_config_load(const char* path, mhdd_config** out) {
  MHDD_REQUIRE(path && out, "mhdd_config_load: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new mhdd_config{mhdd::load_config(path)};
    return MHDD_OK;
  });
}

mhdd_status mhdd_config_parse(const char* json_text, mhdd_config** out) {
  MHDD_REQUIRE(json_text && out, "mhdd_config_parse: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new mhdd_config{mhdd::parse_config(json_text)};
    return MHDD_OK;
  });
}

void mhdd_config_free(mhdd_config* config) { delete config; }

mhdd_status mhdd_config_set_seed(mhdd_config* config, uint64_t seed) {
  MHDD_REQUIRE(config, "mhdd_config_set_seed: null config");
  config->value.solver.seed = seed;
  return MHDD_OK;
}

mhdd_status mhdd_config_set_output_dir(mhdd_config* config, const char* dir) {
  MHDD_REQUIRE(config && dir, "mhdd_config_set_output_dir: null argument");
  MHDD_REQUIRE(*dir, "output directory must be nonempty");
  config->value.output_dir = dir;
  return MHDD_OK;
}

mhdd_status mhdd_config_set_threads(mhdd_config* config, int threads) {
  MHDD_REQUIRE(config, "mhdd_config_set_threads: null config");
  MHDD_REQUIRE(threads >= 0, "threads must be >= 0");
  config->value.threads = threads;
  return MHDD_OK;
}

mhdd_status mhdd_config_set_epsilon(mhdd_config* config, double epsilon) {
  MHDD_REQUIRE(config, "mhdd_config_set_epsilon: null config");
  MHDD_REQUIRE(epsilon >= 0.0, "epsilon must be >= 0");
  config->value.twin.epsilon = epsilon;
  return MHDD_OK;
}

mhdd_status mhdd_config_apply_environment(mhdd_config* config) {
  MHDD_REQUIRE(config, "mhdd_config_apply_environment: null config");
  return guarded([&] {
    mhdd::apply_environment(config->value);
    return MHDD_OK;
  });
}

mhdd_status mhdd_config_to_json(const mhdd_config* config, char* buffer, size_t capacity, size_t* required) {
  MHDD_REQUIRE(config, "mhdd_config_to_json: null config");
  return guarded([&] {
    const std::string text = mhdd::to_json(config->value);
    if (required) *required = text.size() + 1;
    if (buffer && capacity > 0) {
      const size_t n = text.size() < capacity - 1 ? text.size() : capacity - 1;
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
      if (n < text.size()) return fail(MHDD_ERR_USAGE, "mhdd_config_to_json: buffer too small");
    }
    return MHDD_OK;
  });
}

mhdd_status mhdd_config_hash(const mhdd_config* config, uint64_t* hash) {
  MHDD_REQUIRE(config && hash, "mhdd_config_hash: null argument");
  return guarded([&] {
    *hash = mhdd::config_hash(config->value);
    return MHDD_OK;
  });
}

mhdd_status mhdd_run_experiment(const mhdd_config* config, mhdd_run_report* report) {
  MHDD_REQUIRE(config, "mhdd_run_experiment: null config");
  return guarded([&] {
    const mhdd::RunOutcome o = mhdd::run_experiment(config->value);
    if (report) {
      report->exit_status = o.exit_status;
      report->steps = o.steps;
      report->t_final = o.t_final;
      report->blew_up = o.blew_up ? 1 : 0;
      report->blowup_time = o.blowup_time;
      report->checks_total = static_cast<int>(o.checks.size());
      report->checks_failed = 0;
      for (const auto& c : o.checks)
        if (!c.informational && c.verdict == mhdd::Verdict::fail) ++report->checks_failed;
    }
    const mhdd_status s = status_of(o.exit_status);
    if (s == MHDD_BLOWUP) g_last_error = "blow-up at t = " + std::to_string(o.blowup_time);
    if (s == MHDD_CHECK_FAILED) g_last_error = "one or more checks failed";
    return s;
  });
}

mhdd_status mhdd_run_twin(const mhdd_config* config, mhdd_twin_report* report) {
  MHDD_REQUIRE(config, "mhdd_run_twin: null config");
  return guarded([&] {
    const mhdd::TwinOutcome o = mhdd::run_twin_experiment(config->value);
    if (report) {
      report->exit_status = o.exit_status;
      report->epsilon = o.result.epsilon;
      report->d0 = o.result.d0;
      report->d_final = o.result.d.empty() ? 0.0 : o.result.d.back();
      report->c_hat = o.result.c_hat;
      report->bound_holds = o.bound_holds ? 1 : 0;
      report->determinism_ok = o.determinism_ok ? 1 : 0;
      report->blew_up = o.result.blew_up ? 1 : 0;
    }
    const mhdd_status s = status_of(o.exit_status);
    if (s == MHDD_CHECK_FAILED) g_last_error = "twin bound or determinism check failed";
    if (s == MHDD_BLOWUP) g_last_error = "blow-up in a twin trajectory";
    return s;
  });
}

void mhdd_lemma_matrix_default(mhdd_lemma_matrix* m) {
  static const double alphas[] = {0.1, 1.0, 10.0};
  static const double betas[] = {3.5, 4.0, 5.0, 7.0};
  static const char* const fs[] = {"log1", "log2", "log3"};
  if (!m) return;
  m->alphas = alphas;
  m->n_alphas = 3;
  m->betas = betas;
  m->n_betas = 4;
  m->modifiers = fs;
  m->n_modifiers = 3;
  m->pair_samples = 0;
  m->x_points = 0;
  m->seed = 2024;
}

mhdd_status mhdd_run_lemmas(const mhdd_lemma_matrix* matrix, const char* out_dir, mhdd_lemma_report* report) {
  MHDD_REQUIRE(matrix && out_dir, "mhdd_run_lemmas: null argument");
  MHDD_REQUIRE(matrix->n_alphas == 0 || matrix->alphas, "mhdd_run_lemmas: null alphas");
  MHDD_REQUIRE(matrix->n_betas == 0 || matrix->betas, "mhdd_run_lemmas: null betas");
  MHDD_REQUIRE(matrix->n_modifiers == 0 || matrix->modifiers, "mhdd_run_lemmas: null modifiers");
  return guarded([&] {
    mhdd::LemmaMatrix m;
    m.alphas.assign(matrix->alphas, matrix->alphas + matrix->n_alphas);
    m.betas.assign(matrix->betas, matrix->betas + matrix->n_betas);
    m.fs.clear();
    for (size_t i = 0; i < matrix->n_modifiers; ++i) m.fs.push_back(mhdd::parse_modifier(matrix->modifiers[i]));
    if (matrix->pair_samples) m.pair_samples = matrix->pair_samples;
    if (matrix->x_points) m.x_points = matrix->x_points;
    m.seed = matrix->seed;
    mhdd::ensure_directory(out_dir);
    const mhdd::LemmaOutcome o = mhdd::run_lemma_suite(m, out_dir);
    if (report) {
      *report = mhdd_lemma_report{};
      report->exit_status = o.exit_status;
      report->interpolation_cells = static_cast<int>(o.interpolation.size());
      for (const auto& r : o.interpolation) {
        if (r.verdict == mhdd::Verdict::fail) ++report->interpolation_failed;
        if (r.verdict == mhdd::Verdict::not_applicable) ++report->interpolation_not_applicable;
      }
      report->monotonicity_cells = static_cast<int>(o.monotonicity.size());
      report->monotonicity_worst_margin = o.monotonicity.empty() ? 0.0 : o.monotonicity.front().worst_margin;
      for (const auto& r : o.monotonicity) {
        if (r.verdict == mhdd::Verdict::fail) ++report->monotonicity_failed;
        if (r.worst_margin < report->monotonicity_worst_margin) report->monotonicity_worst_margin = r.worst_margin;
      }
    }
    const mhdd_status s = status_of(o.exit_status);
    if (s == MHDD_CHECK_FAILED) g_last_error = "an interpolation or monotonicity cell failed";
    return s;
  });
}

mhdd_status mhdd_solver_create(const mhdd_config* config, mhdd_solver** out) {
  MHDD_REQUIRE(config && out, "mhdd_solver_create: null argument");
  *out = nullptr;
  return guarded([&] {
    const mhdd::SolverConfig& sc = config->value.solver;
    sc.validate();
    mhdd::MhdState state = mhdd::make_initial(sc.initial, sc.grid, sc.seed);
    *out = new mhdd_solver{sc, std::move(state), mhdd::Integrator(sc)};
    return MHDD_OK;
  });
}

void mhdd_solver_free(mhdd_solver* solver) { delete solver; }

mhdd_status mhdd_solver_step(mhdd_solver* solver, long long steps) {
  MHDD_REQUIRE(solver, "mhdd_solver_step: null solver");
  MHDD_REQUIRE(steps >= 0, "mhdd_solver_step: steps must be >= 0");
  return guarded([&] {
    for (long long i = 0; i < steps; ++i) solver->integrator.step(solver->state, solver->config.dt);
    return MHDD_OK;
  });
}

mhdd_status mhdd_solver_time(const mhdd_solver* solver, double* t) {
  MHDD_REQUIRE(solver && t, "mhdd_solver_time: null argument");
  *t = solver->state.t;
  return MHDD_OK;
}

size_t mhdd_ledger_column_count(void) { return mhdd::ledger_columns().size(); }

const char* mhdd_ledger_column_name(size_t index) {
  const auto cols = mhdd::ledger_columns();
  return index < cols.size() ? cols[index].name.data() : nullptr;
}

mhdd_status mhdd_solver_diagnostics(const mhdd_solver* solver, double* values, size_t count) {
  MHDD_REQUIRE(solver && values, "mhdd_solver_diagnostics: null argument");
  const auto cols = mhdd::ledger_columns();
  MHDD_REQUIRE(count >= cols.size(), "mhdd_solver_diagnostics: buffer shorter than the column count");
  return guarded([&] {
    const mhdd::LedgerRow row = mhdd::ledger_row(solver->state, solver->config.damping, solver->config.viscosity,
                                                 solver->config.quadrature_points);
    for (size_t i = 0; i < cols.size(); ++i) values[i] = row.*cols[i].field;
    return MHDD_OK;
  });
}

mhdd_status mhdd_solver_save_checkpoint(const mhdd_solver* solver, const char* path) {
  MHDD_REQUIRE(solver && path, "mhdd_solver_save_checkpoint: null argument");
  return guarded([&] {
    mhdd::save_checkpoint(solver->state, path);
    return MHDD_OK;
  });
}

mhdd_status mhdd_c_alpha_beta(double alpha, double beta, double* out) {
  MHDD_REQUIRE(out, "mhdd_c_alpha_beta: null output");
  return guarded([&] {
    *out = mhdd::c_alpha_beta(alpha, beta);
    return MHDD_OK;
  });
}

mhdd_status mhdd_a_alpha(double alpha, const char* modifier, double* out) {
  MHDD_REQUIRE(modifier && out, "mhdd_a_alpha: null argument");
  return guarded([&] {
    *out = mhdd::a_alpha(alpha, mhdd::parse_modifier(modifier));
    return MHDD_OK;
  });
}

}  // extern "C"
