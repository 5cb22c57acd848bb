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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 iff every
// selected criterion passes. Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mhdd/energy.hpp"
#include "mhdd/experiments.hpp"
#include "mhdd/integrator.hpp"
#include "mhdd/lemmas.hpp"
#include "mhdd/spectral_ops.hpp"
#include "mhdd/uniqueness.hpp"
#include "oracles.hpp"

using namespace mhdd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel_diff(const SpectralScalar& a, const SpectralScalar& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

double rel_diff(const PhysicalScalar& a, const PhysicalScalar& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

// Least-squares slope of log(err) against log(dt).
double order_slope(const std::vector<double>& dts, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double x = std::log(dts[i]), y = std::log(std::abs(errs[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double state_distance(const MhdState& a, const MhdState& b) {
  return std::max(max_abs_difference(a.u, b.u), max_abs_difference(a.b, b.b));
}

// --- 1 -------------------------------------------------------------------

Outcome spectral_exactness() {
  const GridSpec g = GridSpec::make(32);
  SpectralVectorField s = testing::random_bandlimited_field(g, 1, g.n_modes / 2.0);
  double roundtrip = 0.0;
  {
    const SpectralVectorField back = forward_transform(inverse_transform(s));
    for (int c = 0; c < 3; ++c) roundtrip = std::max(roundtrip, rel_diff(back.c[c], s.c[c]));
  }
  // f = sin(2x + y) cos(3z) + cos(x - 4y + 2z); every wavevector has |k| < R.
  auto f = [](double x, double y, double z) { return std::sin(2 * x + y) * std::cos(3 * z) + std::cos(x - 4 * y + 2 * z); };
  auto fx = [](double x, double y, double z) { return 2 * std::cos(2 * x + y) * std::cos(3 * z) - std::sin(x - 4 * y + 2 * z); };
  auto fy = [](double x, double y, double z) { return std::cos(2 * x + y) * std::cos(3 * z) + 4 * std::sin(x - 4 * y + 2 * z); };
  auto fz = [](double x, double y, double z) { return -3 * std::sin(2 * x + y) * std::sin(3 * z) - 2 * std::sin(x - 4 * y + 2 * z); };
  auto lap = [](double x, double y, double z) { return -14 * std::sin(2 * x + y) * std::cos(3 * z) - 21 * std::cos(x - 4 * y + 2 * z); };
  SpectralVectorField v = SpectralVectorField::zeros(g);
  v.c[0] = forward_scalar(g, testing::sample(g, f));
  const SpectralTensor grad = gradient(v);
  const SpectralVectorField lv = laplacian(v);
  double deriv = 0.0;
  deriv = std::max(deriv, rel_diff(inverse_scalar(g, grad.c[0][0]), testing::sample(g, fx)));
  deriv = std::max(deriv, rel_diff(inverse_scalar(g, grad.c[0][1]), testing::sample(g, fy)));
  deriv = std::max(deriv, rel_diff(inverse_scalar(g, grad.c[0][2]), testing::sample(g, fz)));
  deriv = std::max(deriv, rel_diff(inverse_scalar(g, lv.c[0]), testing::sample(g, lap)));
  return {roundtrip <= 1e-12 && deriv <= 1e-12,
          "N=32 roundtrip=" + sci(roundtrip) + " derivatives=" + sci(deriv) + " (tol 1e-12)"};
}

// --- 2 -------------------------------------------------------------------

Outcome leray_algebra() {
  const GridSpec g = GridSpec::make(32);
  const SpectralVectorField v = testing::random_bandlimited_field(g, 2, g.n_modes / 2.0);
  const SpectralVectorField w = testing::random_bandlimited_field(g, 3, g.n_modes / 2.0);
  const SpectralVectorField pv = leray_project(v);
  const double scale = max_abs(v);
  const double idem = max_abs_difference(leray_project(pv), pv) / scale;
  const double lhs = inner_product(pv, w), rhs = inner_product(v, leray_project(w));
  const double adj = std::abs(lhs - rhs) / (l2_norm(v) * l2_norm(w));
  // gradient of a random scalar potential
  SpectralVectorField phi = SpectralVectorField::zeros(g);
  phi.c[0] = testing::random_bandlimited(g, 4, g.n_modes / 2.0);
  const SpectralTensor gp = gradient(phi);
  SpectralVectorField grad_phi{g, {gp.c[0][0], gp.c[0][1], gp.c[0][2]}};
  const double annih = max_abs(leray_project(grad_phi)) / max_abs(grad_phi);
  const double div = l2_norm(g, divergence(pv)) / l2_norm(v);
  const SpectralVectorField qv = v - pv;
  const double v2 = l2_norm(v) * l2_norm(v), p2 = l2_norm(pv) * l2_norm(pv), q2 = l2_norm(qv) * l2_norm(qv);
  const double pyth = std::abs(v2 - p2 - q2) / v2;
  const double worst = std::max({idem, adj, annih, div, pyth});
  return {worst <= 1e-12, "idempotence=" + sci(idem) + " adjoint=" + sci(adj) + " grad=" + sci(annih) +
                              " div=" + sci(div) + " pythagoras=" + sci(pyth) + " (tol 1e-12)"};
}

// --- 3 -------------------------------------------------------------------

Outcome analytic_decay() {
  SolverConfig c;
  c.grid = GridSpec::make(16);
  c.initial.kind = InitialKind::single_mode;
  c.initial.wavevector = {0, 0, 1};
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.ledger_stride = 1000;
  const MhdState s = run(c).final_state;
  const PhysicalVectorField p = inverse_transform(s.u);
  const PhysicalScalar ref = testing::sample(c.grid, [](double, double, double z) { return std::exp(-1.0) * std::sin(z); });
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    err = std::max({err, std::abs(p.v[0][i] - ref[i]), std::abs(p.v[1][i]), std::abs(p.v[2][i])});
  err = std::max(err, max_abs(s.b));

  // The integrating factor makes a single mode exact, so the order is
  // measured on a nonlinear Taylor-Green state against a dt/4 reference.
  SolverConfig tg;
  tg.grid = GridSpec::make(16);
  tg.initial.kind = InitialKind::taylor_green_like;
  tg.initial.amplitude = 4.0;
  tg.t_end = 1.0;
  tg.ledger_stride = 100000;
  tg.dt = 2.5e-4;
  const MhdState ref_state = run(tg).final_state;
  const std::vector<double> dts{4e-3, 2e-3, 1e-3};
  std::vector<double> errs;
  for (double dt : dts) {
    tg.dt = dt;
    errs.push_back(state_distance(run(tg).final_state, ref_state));
  }
  const double slope = order_slope(dts, errs);
  return {err <= 1e-8 && slope >= 3.8, "max error vs e^-t sin(x3)=" + sci(err) + " (tol 1e-8); order slope=" +
                                           sci(slope) + " (>= 3.8) errors " + sci(errs[0]) + "," + sci(errs[1]) +
                                           "," + sci(errs[2])};
}

// --- 4 -------------------------------------------------------------------

SolverConfig small_data_config(const DampingSpec& d) {
  SolverConfig c;
  c.grid = GridSpec::make(32);
  c.damping = d;
  c.initial.kind = InitialKind::random_divfree;
  c.initial.target_h1 = 0.01;
  c.seed = 2024;
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.ledger_stride = 10;
  return c;
}

// Runs shared by criteria 4 and 5.
const EnergyLedger& small_data_ledger(const DampingSpec& d) {
  static std::vector<std::pair<DampingSpec, EnergyLedger>> cache;
  for (const auto& [k, v] : cache)
    if (k == d) return v;
  cache.emplace_back(d, run(small_data_config(d)).ledger);
  return cache.back().second;
}

Outcome energy_balance() {
  SolverConfig c;
  c.grid = GridSpec::make(16);
  c.initial.kind = InitialKind::taylor_green_like;
  c.initial.amplitude = 4.0;
  c.t_end = 1.0;
  c.ledger_stride = 100000;
  const std::vector<double> dts{4e-3, 2e-3, 1e-3};
  std::vector<double> res;
  for (double dt : dts) {
    c.dt = dt;
    res.push_back(energy_balance_residuals(run(c).ledger).back());
  }
  const double slope = order_slope(dts, res);
  bool ok = slope >= 3.8;
  std::string detail = "undamped residual slope=" + sci(slope) + " (>= 3.8) residuals " + sci(res[0]) + "," +
                       sci(res[1]) + "," + sci(res[2]);
  for (const DampingSpec& d : {DampingSpec::power(1.0, 4.0), DampingSpec::generalized(1.0, Modifier::log1)}) {
    const CheckReport r = check_L2_inequality(small_data_ledger(d));
    ok = ok && r.verdict == Verdict::pass;
    detail += "; " + d.describe() + " min margin=" + sci(r.min_margin) + " (tol -" + sci(r.tolerance) + ")";
  }
  return {ok, detail};
}

// --- 5 -------------------------------------------------------------------

Outcome h1_inequalities() {
  bool ok = true;
  std::string detail = "N=32 H1=0.01:";
  auto judge = [&](const CheckReport& r) {
    if (r.informational) return;
    bool nonneg = !r.margins.empty();
    for (double m : r.margins) nonneg = nonneg && m >= 0.0;
    ok = ok && r.verdict == Verdict::pass && nonneg;
    detail += " [" + r.name + "] " + std::string(verdict_name(r.verdict)) + " min=" + sci(r.min_margin);
  };
  const auto power = check_H1_inequalities(small_data_ledger(DampingSpec::power(1.0, 5.0)));
  for (const auto& r : power) judge(r);
  detail += " c=" + sci(c_alpha_beta(1.0, 5.0));
  const auto gen = check_H1_inequalities(small_data_ledger(DampingSpec::generalized(1.0, Modifier::log1)));
  for (const auto& r : gen) judge(r);
  detail += " a_alpha=" + sci(a_alpha(1.0, Modifier::log1));
  return {ok && power.size() == 2 && !gen.empty(), detail};
}

// --- 6 -------------------------------------------------------------------

Outcome interpolation() {
  const auto x = linspace(0.0, 100.0, 10000);
  double worst = INFINITY, sharp = 0.0;
  bool ok = true;
  for (double a : {0.1, 1.0, 10.0})
    for (double b : {3.5, 4.0, 5.0, 7.0}) {
      const InterpolationReport r = check_interpolation(a, b, x);
      ok = ok && r.report.verdict == Verdict::pass;
      worst = std::min(worst, r.report.worst_margin);
      sharp = std::max(sharp, std::abs(r.margin_at_x_star));
    }
  // Independent golden-section maximization of (x^2 - x^4)/2.
  auto g = [](double t) { return 0.5 * (t * t - t * t * t * t); };
  double lo = 0.0, hi = 2.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
    if (g(c) > g(d)) hi = d;
    else lo = c;
  }
  const double xm = 0.5 * (lo + hi);
  const double c15 = c_alpha_beta(1.0, 5.0);
  const bool spot = std::abs(c15 - 0.125) <= 1e-15 && std::abs(g(xm) - 0.125) <= 1e-15 &&
                    std::abs(xm - 1.0 / std::sqrt(2.0)) <= 1e-7;
  ok = ok && worst >= -1e-12 && sharp <= 1e-10 && spot;
  return {ok, "12 cells: worst margin=" + sci(worst) + " (>= -1e-12) max|margin(x*)|=" + sci(sharp) +
                  " (<= 1e-10); c(1,5)=" + sci(c15) + " golden max=" + sci(g(xm)) + " at x=" + sci(xm)};
}

// --- 7 -------------------------------------------------------------------

Outcome monotonicity() {
  bool ok = true;
  double worst = INFINITY;
  for (Modifier f : kAllModifiers) {
    const LemmaReport r = check_monotonicity(f, 100000, 2024, 1e-3, 1e3);
    ok = ok && r.verdict == Verdict::pass && r.worst_margin >= -1e-12;
    worst = std::min(worst, r.worst_margin);
  }
  const GridSpec g = GridSpec::make(16);
  double worst_field = INFINITY;
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    const Modifier f = kAllModifiers[pair % 3];
    const double scale = std::pow(10.0, static_cast<double>(pair % 7) - 3.0);
    SpectralVectorField a = testing::random_bandlimited_field(g, 1000 + 2 * pair, g.truncation_radius);
    SpectralVectorField b = testing::random_bandlimited_field(g, 1001 + 2 * pair, g.truncation_radius);
    a *= scale;
    b *= scale;
    const ContractionResult c =
        damping_contraction_check(inverse_transform(a), inverse_transform(b), DampingSpec::generalized(1.0, f));
    worst_field = std::min(worst_field, c.integral);
  }
  ok = ok && worst_field >= -1e-10;
  return {ok, "3 x 1e5 pairs: worst gap=" + sci(worst) + " (>= -1e-12); 100 field pairs N=16: worst integral=" +
                  sci(worst_field) + " (>= -1e-10)"};
}

// --- 8 -------------------------------------------------------------------

Outcome damping_identity() {
  const GridSpec g = GridSpec::make(32);
  const SpectralVectorField u = random_divfree_field(g, 8, 1.0);
  const IdentityReport b3 = check_damping_identity(u, DampingSpec::power(1.0, 3.0));
  const DampingSpec gen = DampingSpec::generalized(1.0, Modifier::log1);
  const double e32 = check_damping_identity(u, gen, 32).relative_error;
  const double e64 = check_damping_identity(u, gen, 64).relative_error;
  const bool ok = b3.verdict == Verdict::pass && b3.relative_error <= 1e-6 && e64 * 4.0 <= e32;
  return {ok, "beta=3 relative error=" + sci(b3.relative_error) + " (tol 1e-6); log1 mismatch M=32 " + sci(e32) +
                  " -> M=64 " + sci(e64) + " (ratio " + sci(e64 > 0 ? e32 / e64 : INFINITY) + ", >= 4)"};
}

// --- 9 -------------------------------------------------------------------

Outcome uniqueness() {
  SolverConfig c;
  c.grid = GridSpec::make(16);
  c.damping = DampingSpec::generalized(1.0, Modifier::log1);
  c.initial.kind = InitialKind::random_divfree;
  c.initial.target_h1 = 1.0;
  c.seed = 9;
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.ledger_stride = 20;
  const TwinRunResult zero = twin_run(c, 0.0);
  const bool identical = std::all_of(zero.d.begin(), zero.d.end(), [](double d) { return d == 0.0; });
  const TwinRunResult a = twin_run(c, 1e-6);
  const TwinRunResult b = twin_run(c, 1e-5);
  const bool bound = twin_bound_holds(a, 1e-6);
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < a.d.size(); ++i)
    worst_ratio = std::max(worst_ratio, std::abs(b.d[i] / a.d[i] / 100.0 - 1.0));
  return {identical && bound && worst_ratio <= 0.05,
          std::string("eps=0 identical=") + (identical ? "yes" : "no") + "; eps=1e-6 bound " +
              (bound ? "holds" : "violated") + " C_hat=" + sci(a.c_hat) + " excess=" + sci(a.max_bound_excess) +
              "; d(1e-5)/d(1e-6)/100 max deviation=" + sci(worst_ratio) + " (<= 0.05)"};
}

// --- 10 ------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  ExperimentConfig c;
  c.name = "acceptance-determinism";
  c.solver.grid = GridSpec::make(16);
  c.solver.damping = DampingSpec::power(1.0, 4.0);
  c.solver.initial.kind = InitialKind::random_divfree;
  c.solver.initial.target_h1 = 1.0;
  c.solver.seed = 77;
  c.solver.dt = 1e-3;
  c.solver.t_end = 0.2;
  const fs::path root = fs::temp_directory_path() / "mhdd_acceptance_determinism";
  fs::remove_all(root);
  c.output_dir = (root / "a").string();
  run_experiment(c);
  c.output_dir = (root / "b").string();
  run_experiment(c);
  const std::string a = slurp(root / "a" / "ledger.csv"), b = slurp(root / "b" / "ledger.csv");
  fs::remove_all(root);
  return {!a.empty() && a == b, "ledger.csv " + std::to_string(a.size()) + " bytes, " +
                                    (a == b ? "byte-identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "spectral exactness", spectral_exactness},
      {2, "Leray projector algebra", leray_algebra},
      {3, "analytic decay and RK4 order", analytic_decay},
      {4, "energy balance", energy_balance},
      {5, "H1 inequalities", h1_inequalities},
      {6, "interpolation inequality", interpolation},
      {7, "damping monotonicity", monotonicity},
      {8, "damping identity", damping_identity},
      {9, "uniqueness harness", uniqueness},
      {10, "determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
