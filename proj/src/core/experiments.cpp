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

#include "mhdd/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhdd/checkpoint.hpp"
#include "mhdd/error.hpp"
#include "mhdd/fft.hpp"

namespace mhdd {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed on '" + path + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json check_json(const CheckReport& r) {
  return {{"name", r.name},
          {"verdict", std::string(verdict_name(r.verdict))},
          {"min_margin", r.min_margin},
          {"at_time", r.at_time},
          {"tolerance", r.tolerance},
          {"informational", r.informational},
          {"detail", r.detail}};
}

CheckReport identity_as_check(const IdentityReport& id, const DampingSpec& d) {
  CheckReport r;
  r.name = "damping identity (" + d.describe() + ")";
  r.verdict = id.verdict;
  r.min_margin = 1e-6 - id.relative_error;
  r.tolerance = 0.0;
  std::ostringstream s;
  s.precision(6);
  s << "lhs=" << id.lhs << " rhs=" << id.rhs << " rel_err=" << id.relative_error << " " << id.detail;
  r.detail = s.str();
  return r;
}

void apply_threads(const ExperimentConfig& c) {
  if (c.threads > 0) set_thread_count(c.threads);
}

TwinOutcome twin_core(const ExperimentConfig& config) {
  std::optional<MhdState> perturbation;
  if (!config.twin.perturbation_checkpoint.empty())
    perturbation = load_checkpoint(config.twin.perturbation_checkpoint);
  TwinOutcome out;
  out.result = twin_run(config.solver, config.twin.epsilon, perturbation);
  out.result.config_hash = config_hash(config);
  auto all_zero = [](const TwinRunResult& r) {
    for (double d : r.d)
      if (d != 0.0) return false;
    return true;
  };
  out.determinism_ok = config.twin.epsilon == 0.0 ? all_zero(out.result) : all_zero(twin_run(config.solver, 0.0));
  out.bound_holds = twin_bound_holds(out.result);
  if (out.result.blew_up) out.exit_status = kExitBlowUp;
  else if (!out.bound_holds || !out.determinism_ok) out.exit_status = kExitCheckFailed;
  return out;
}

json twin_json(const TwinOutcome& o) {
  const TwinRunResult& r = o.result;
  return {{"epsilon", r.epsilon},
          {"d0", r.d0},
          {"d_final", r.d.empty() ? 0.0 : r.d.back()},
          {"c_hat", r.c_hat},
          {"c_least_squares", r.c_least_squares},
          {"c_envelope", r.c_envelope},
          {"fit_window_end_t", r.t.empty() ? 0.0 : r.t[r.window_end]},
          {"max_bound_excess", r.max_bound_excess},
          {"bound_holds", o.bound_holds},
          {"determinism_ok", o.determinism_ok},
          {"blew_up", r.blew_up},
          {"blowup_time", r.blowup_time},
          {"config_hash", hex64(r.config_hash)}};
}

void write_twin_files(const TwinOutcome& o, const std::string& dir) {
  std::ofstream csv = open_out(join(dir, "twin.csv"));
  write_twin_csv(o.result, csv);
  csv.flush();
  if (!csv) throw IoError("write failed on '" + join(dir, "twin.csv") + "'");
}

}  // namespace

void ensure_directory(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create output directory '" + path + "'");
}

RunOutcome run_experiment(const ExperimentConfig& config) {
  config.validate();
  apply_threads(config);
  const std::string& dir = config.output_dir;
  ensure_directory(dir);

  RunOutcome out;
  RunResult rr;
  EnergyLedger ledger;
  try {
    rr = run(config.solver);
    ledger = rr.ledger;
    out.steps = rr.steps;
    out.t_final = rr.final_state.t;
    out.warnings = rr.warnings;
  } catch (const BlowUp& e) {
    out.blew_up = true;
    out.blowup_time = e.time();
    ledger = e.ledger();
    out.steps = ledger.rows.empty() ? 0 : ledger.rows.back().step;
    out.t_final = ledger.rows.empty() ? 0.0 : ledger.rows.back().t;
    out.warnings.push_back(e.what());
  }
  write_ledger_csv(ledger, join(dir, "ledger.csv"));

  if (!out.blew_up) {
    save_checkpoint(rr.final_state, join(dir, "checkpoint.mhdf"));
    const ChecksSpec& k = config.checks;
    if (k.l2) out.checks.push_back(check_L2_inequality(ledger));
    if (k.h1_additive || k.h1_exponential) {
      for (auto& r : check_H1_inequalities(ledger)) {
        const bool additive = r.name.find("additive") != std::string::npos;
        if (additive ? k.h1_additive : k.h1_exponential) out.checks.push_back(std::move(r));
      }
      out.checks.push_back(gronwall_on_ledger(ledger));
    }
    if (k.damping_identity)
      out.checks.push_back(identity_as_check(
          check_damping_identity(rr.final_state.u, config.solver.damping), config.solver.damping));
    if (k.lemmas) {
      const LemmaOutcome lo = run_lemma_suite(LemmaMatrix{}, dir);
      CheckReport r;
      r.name = "lemma suite (default matrix)";
      r.verdict = lo.exit_status == kExitOk ? Verdict::pass : Verdict::fail;
      r.detail = "see lemmas/report.txt";
      out.checks.push_back(r);
    }
    if (k.twin) {
      const TwinOutcome to = twin_core(config);
      write_twin_files(to, dir);
      CheckReport r;
      r.name = "twin run bound (eps = " + std::to_string(config.twin.epsilon) + ")";
      r.verdict = to.exit_status == kExitOk ? Verdict::pass : Verdict::fail;
      r.min_margin = -to.result.max_bound_excess;
      r.detail = "c_hat = " + std::to_string(to.result.c_hat) + (to.determinism_ok ? "" : ", eps = 0 twin not identical");
      out.checks.push_back(r);
    }
  }

  bool failed = false;
  for (const auto& c : out.checks) failed = failed || (!c.informational && c.verdict == Verdict::fail);
  out.exit_status = out.blew_up ? kExitBlowUp : failed ? kExitCheckFailed : kExitOk;

  if (config.report.text) {
    std::ostringstream txt;
    txt << "experiment: " << config.name << "\n";
    txt << "damping: " << config.solver.damping.describe() << "\n";
    txt << "steps: " << out.steps << "  t_final: " << out.t_final << "\n";
    for (const auto& w : out.warnings) txt << "warning: " << w << "\n";
    if (out.blew_up) txt << "BLOW-UP at t=" << out.blowup_time << "\n";
    txt << format_checks(out.checks);
    write_text(join(dir, "checks.txt"), txt.str());
  }
  if (config.report.json) {
    json j;
    j["name"] = config.name;
    j["config_hash"] = hex64(config_hash(config));
    j["exit_status"] = out.exit_status;
    j["steps"] = out.steps;
    j["t_final"] = out.t_final;
    j["cfl_dt_max"] = rr.cfl_dt_max;
    j["blew_up"] = out.blew_up;
    j["blowup_time"] = out.blowup_time;
    j["warnings"] = out.warnings;
    j["checks"] = json::array();
    for (const auto& c : out.checks) j["checks"].push_back(check_json(c));
    write_text(join(dir, "summary.json"), j.dump(2) + "\n");
  }
  return out;
}

LemmaOutcome run_lemma_suite(const LemmaMatrix& m, const std::string& out_dir) {
  if (m.alphas.empty() || m.betas.empty() || m.fs.empty())
    throw InvalidArgument("lemma matrix is empty: need at least one alpha, beta and f");
  if (m.x_points < 2) throw InvalidArgument("lemma matrix: need at least 2 x points");
  LemmaOutcome out;
  const std::vector<double> x = linspace(0.0, 100.0, m.x_points);
  for (double a : m.alphas)
    for (double b : m.betas) out.interpolation.push_back(check_interpolation(a, b, x).report);
  for (std::size_t i = 0; i < m.fs.size(); ++i)
    out.monotonicity.push_back(check_monotonicity(m.fs[i], m.pair_samples, m.seed + i));

  {  // saturating case f = e^t, g = 0, h = 1, A = 1
    const std::vector<double> t = linspace(0.0, 1.0, 1001);
    std::vector<double> f(t.size()), g(t.size(), 0.0), h(t.size(), 1.0);
    for (std::size_t i = 0; i < t.size(); ++i) f[i] = std::exp(t[i]);
    LemmaReport r = gronwall_check(t, f, g, h, 1.0, 1e-6);
    r.parameters += " f=e^t g=0 h=1";
    out.gronwall.push_back(r);
  }
  const std::vector<double> z = logspace(0.0, 6.0, 601);
  for (Modifier f : m.fs)
    for (double b : m.betas) out.hypothesis.push_back(hypothesis_H_report(f, b, z));

  bool ok = true;
  for (const auto& r : out.interpolation) ok = ok && r.verdict != Verdict::fail;
  for (const auto& r : out.monotonicity) ok = ok && r.verdict != Verdict::fail;
  out.exit_status = ok ? kExitOk : kExitCheckFailed;

  const std::string dir = join(out_dir, "lemmas");
  ensure_directory(dir);
  auto write_csv = [&](const char* name, const std::vector<LemmaReport>& reports) {
    std::ofstream f = open_out(join(dir, name));
    write_lemma_csv(reports, f);
  };
  write_csv("interpolation.csv", out.interpolation);
  write_csv("monotonicity.csv", out.monotonicity);
  write_csv("gronwall.csv", out.gronwall);
  {
    std::ofstream f = open_out(join(dir, "hypothesis_H.csv"));
    f << "f,beta,samples,a_star,a_argmin,b_star,b_argmax,upper_holds,lower_degenerates_from\n";
    char buf[256];
    for (const auto& h : out.hypothesis) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n",
                    std::string(modifier_name(h.f)).c_str(), h.beta, h.samples, h.a_star, h.a_argmin, h.b_star,
                    h.b_argmax, h.upper_holds ? 1 : 0, h.lower_degenerates_from);
      f << buf;
    }
  }
  std::ostringstream txt;
  for (const auto& r : out.interpolation) txt << format_lemma_report(r) << "\n";
  for (const auto& r : out.monotonicity) txt << format_lemma_report(r) << "\n";
  for (const auto& r : out.gronwall) txt << format_lemma_report(r) << "\n";
  txt << "hypothesis (H), informational:\n";
  for (const auto& h : out.hypothesis) txt << "  " << h.summary << "\n";
  write_text(join(dir, "report.txt"), txt.str());
  return out;
}

TwinOutcome run_twin_experiment(const ExperimentConfig& config) {
  config.validate();
  apply_threads(config);
  ensure_directory(config.output_dir);
  TwinOutcome out = twin_core(config);
  write_twin_files(out, config.output_dir);
  if (config.report.json) {
    json j;
    j["name"] = config.name;
    j["exit_status"] = out.exit_status;
    j["twin"] = twin_json(out);
    write_text(join(config.output_dir, "summary.json"), j.dump(2) + "\n");
  }
  return out;
}

}  // namespace mhdd
