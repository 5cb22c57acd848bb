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

// Command-line front end. Talks to the library only through mhdd.h.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhdd/mhdd.h"

namespace {

constexpr int kExitUsage = 1;

int exit_code(mhdd_status s) {
  switch (s) {
    case MHDD_OK:
      return 0;
    case MHDD_CHECK_FAILED:
      return 2;
    case MHDD_BLOWUP:
      return 3;
    default:
      return kExitUsage;
  }
}

int report_error(mhdd_status s) {
  const char* msg = mhdd_last_error();
  std::fprintf(stderr, "mhdd: %s%s%s\n", mhdd_status_name(s), *msg ? ": " : "", msg);
  return exit_code(s);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

bool parse_doubles(const std::string& text, std::vector<double>& out, const char* flag) {
  for (const auto& item : split(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::fprintf(stderr, "mhdd: %s: '%s' is not a number\n", flag, item.c_str());
      return false;
    }
  }
  return true;
}

struct Common {
  std::string config;
  std::string out;
  int threads = -1;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "experiment config (JSON)");
  if (needs_config) opt->required();
  cmd->add_option("--out", c.out, "output directory (overrides config and MHDD_OUT_DIR)");
  cmd->add_option("--threads", c.threads, "thread cap (overrides config and MHDD_THREADS)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", c.seed, "random seed (overrides config)");
}

// Loads the config and applies environment then flag overrides.
mhdd_status prepare(const Common& c, mhdd_config** cfg) {
  mhdd_status s = mhdd_config_load(c.config.c_str(), cfg);
  if (s != MHDD_OK) return s;
  if ((s = mhdd_config_apply_environment(*cfg)) != MHDD_OK) return s;
  if (!c.out.empty() && (s = mhdd_config_set_output_dir(*cfg, c.out.c_str())) != MHDD_OK) return s;
  if (c.threads >= 0 && (s = mhdd_config_set_threads(*cfg, c.threads)) != MHDD_OK) return s;
  if (c.seed && (s = mhdd_config_set_seed(*cfg, *c.seed)) != MHDD_OK) return s;
  return MHDD_OK;
}

int cmd_run(const Common& c) {
  mhdd_config* cfg = nullptr;
  mhdd_status s = prepare(c, &cfg);
  if (s != MHDD_OK) {
    mhdd_config_free(cfg);
    return report_error(s);
  }
  mhdd_run_report rep{};
  s = mhdd_run_experiment(cfg, &rep);
  mhdd_config_free(cfg);
  if (s != MHDD_OK && s != MHDD_CHECK_FAILED && s != MHDD_BLOWUP) return report_error(s);
  std::printf("steps=%lld t=%.6g checks=%d failed=%d", rep.steps, rep.t_final, rep.checks_total, rep.checks_failed);
  if (rep.blew_up) std::printf(" blow-up at t=%.6g", rep.blowup_time);
  std::printf("\n");
  return exit_code(s);
}

int cmd_twin(const Common& c, std::optional<double> eps) {
  mhdd_config* cfg = nullptr;
  mhdd_status s = prepare(c, &cfg);
  if (s == MHDD_OK && eps) s = mhdd_config_set_epsilon(cfg, *eps);
  if (s != MHDD_OK) {
    mhdd_config_free(cfg);
    return report_error(s);
  }
  mhdd_twin_report rep{};
  s = mhdd_run_twin(cfg, &rep);
  mhdd_config_free(cfg);
  if (s != MHDD_OK && s != MHDD_CHECK_FAILED && s != MHDD_BLOWUP) return report_error(s);
  std::printf("eps=%.3g d0=%.6e d_final=%.6e c_hat=%.6g bound=%s determinism=%s%s\n", rep.epsilon, rep.d0,
              rep.d_final, rep.c_hat, rep.bound_holds ? "ok" : "violated", rep.determinism_ok ? "ok" : "broken",
              rep.blew_up ? " blow-up" : "");
  return exit_code(s);
}

struct LemmaFlags {
  std::optional<std::string> alphas, betas, fs;
  std::size_t samples = 0;
  std::size_t x_points = 0;
  std::uint64_t seed = 2024;
  std::string out = "out";
  int threads = -1;
};

int cmd_lemmas(const LemmaFlags& f) {
  mhdd_lemma_matrix m;
  mhdd_lemma_matrix_default(&m);
  std::vector<double> alphas, betas;
  std::vector<std::string> names;
  std::vector<const char*> name_ptrs;
  if (f.alphas) {
    if (!parse_doubles(*f.alphas, alphas, "--alphas")) return kExitUsage;
    m.alphas = alphas.data();
    m.n_alphas = alphas.size();
  }
  if (f.betas) {
    if (!parse_doubles(*f.betas, betas, "--betas")) return kExitUsage;
    m.betas = betas.data();
    m.n_betas = betas.size();
  }
  if (f.fs) {
    names = split(*f.fs);
    for (const auto& n : names) name_ptrs.push_back(n.c_str());
    m.modifiers = name_ptrs.data();
    m.n_modifiers = name_ptrs.size();
  }
  m.pair_samples = f.samples;
  m.x_points = f.x_points;
  m.seed = f.seed;
  if (f.threads >= 0) {
    if (const mhdd_status s = mhdd_set_threads(f.threads); s != MHDD_OK) return report_error(s);
  }
  mhdd_lemma_report rep{};
  const mhdd_status s = mhdd_run_lemmas(&m, f.out.c_str(), &rep);
  if (s != MHDD_OK && s != MHDD_CHECK_FAILED) return report_error(s);
  std::printf("interpolation cells=%d failed=%d not-applicable=%d; monotonicity cells=%d failed=%d worst=%.3e\n",
              rep.interpolation_cells, rep.interpolation_failed, rep.interpolation_not_applicable, rep.monotonicity_cells, rep.monotonicity_failed,
              rep.monotonicity_worst_margin);
  return exit_code(s);
}

int cmd_info() {
  std::printf("mhdd %s\n", mhdd_version());
  std::printf("ledger columns: step");
  for (std::size_t i = 0; i < mhdd_ledger_column_count(); ++i) std::printf(",%s", mhdd_ledger_column_name(i));
  std::printf("\n");
  double c = 0.0, a = 0.0;
  if (mhdd_c_alpha_beta(1.0, 5.0, &c) == MHDD_OK) std::printf("c(alpha=1, beta=5) = %.17g\n", c);
  if (mhdd_a_alpha(0.1, "log1", &a) == MHDD_OK) std::printf("a_alpha(alpha=0.1, log1) = %.17g\n", a);
  mhdd_config* cfg = nullptr;
  if (mhdd_config_default(&cfg) != MHDD_OK) return report_error(MHDD_ERR_INTERNAL);
  std::size_t need = 0;
  mhdd_config_to_json(cfg, nullptr, 0, &need);
  std::string text(need, '\0');
  const mhdd_status s = mhdd_config_to_json(cfg, text.data(), text.size(), nullptr);
  mhdd_config_free(cfg);
  if (s != MHDD_OK) return report_error(s);
  std::printf("default config:\n%s", text.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral MHD solver with damping and an energy-inequality harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mhdd_version()));

  Common run_opts, twin_opts;
  auto* run = app.add_subcommand("run", "integrate a config and check the energy inequalities");
  add_common(run, run_opts, true);

  auto* twin = app.add_subcommand("twin", "evolve two nearby solutions and fit the difference growth");
  add_common(twin, twin_opts, true);
  std::optional<double> eps;
  twin->add_option("--eps", eps, "perturbation size (overrides config)")->check(CLI::NonNegativeNumber);

  LemmaFlags lf;
  auto* lemmas = app.add_subcommand("lemmas", "run the scalar and vector lemma verifiers");
  lemmas->add_option("--alphas", lf.alphas, "comma-separated alpha values");
  lemmas->add_option("--betas", lf.betas, "comma-separated beta values");
  lemmas->add_option("--fs", lf.fs, "comma-separated modifiers (log1,log2,log3)");
  lemmas->add_option("--samples", lf.samples, "random vector pairs per modifier (monotonicity check)");
  lemmas->add_option("--x-points", lf.x_points, "grid points on [0, 100] (interpolation check)");
  lemmas->add_option("--seed", lf.seed, "random seed");
  lemmas->add_option("--out", lf.out, "output directory");
  lemmas->add_option("--threads", lf.threads, "thread cap")->check(CLI::NonNegativeNumber);

  app.add_subcommand("info", "print version, ledger columns and the default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(run_opts);
  if (*twin) return cmd_twin(twin_opts, eps);
  if (*lemmas) return cmd_lemmas(lf);
  return cmd_info();
}
