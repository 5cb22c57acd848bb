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

#include "mhdd/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mhdd/error.hpp"
#include "mhdd/lemmas.hpp"
#include "mhdd/spectral_ops.hpp"
#include "parallel.hpp"

namespace mhdd {
namespace {

using R = LedgerRow;

constexpr LedgerColumn kColumns[] = {
    {"t", &R::t},
    {"l2_sq", &R::l2_sq},
    {"h1dot_sq", &R::h1dot_sq},
    {"h2dot_sq", &R::h2dot_sq},
    {"visc_diss", &R::visc_diss},
    {"lbeta", &R::lbeta},
    {"d_beta_grad", &R::d_beta_grad},
    {"d_beta_sq", &R::d_beta_sq},
    {"d_f4", &R::d_f4},
    {"d_fprime", &R::d_fprime},
    {"d_fprime_literal", &R::d_fprime_literal},
    {"d_f_gradsq", &R::d_f_gradsq},
    {"d_f_grad", &R::d_f_grad},
    {"div_l2", &R::div_l2},
    {"int_h1dot_sq", &R::int_h1dot_sq},
    {"int_h2dot_sq", &R::int_h2dot_sq},
    {"int_visc_diss", &R::int_visc_diss},
    {"int_lbeta", &R::int_lbeta},
    {"int_d_beta_grad", &R::int_d_beta_grad},
    {"int_d_beta_sq", &R::int_d_beta_sq},
    {"int_d_f4", &R::int_d_f4},
    {"int_d_fprime", &R::int_d_fprime},
    {"int_d_fprime_literal", &R::int_d_fprime_literal},
    {"int_d_f_gradsq", &R::int_d_f_gradsq},
    {"int_d_f_grad", &R::int_d_f_grad},
    {"energy_rk4", &R::energy_rk4},
};

struct Integrated {
  double R::*value;
  double R::*integral;
};

constexpr Integrated kIntegrated[] = {
    {&R::h1dot_sq, &R::int_h1dot_sq},
    {&R::h2dot_sq, &R::int_h2dot_sq},
    {&R::visc_diss, &R::int_visc_diss},
    {&R::lbeta, &R::int_lbeta},
    {&R::d_beta_grad, &R::int_d_beta_grad},
    {&R::d_beta_sq, &R::int_d_beta_sq},
    {&R::d_f4, &R::int_d_f4},
    {&R::d_fprime, &R::int_d_fprime},
    {&R::d_fprime_literal, &R::int_d_fprime_literal},
    {&R::d_f_gradsq, &R::int_d_f_gradsq},
    {&R::d_f_grad, &R::int_d_f_grad},
};

double field_energy(const SpectralVectorField& u, const SpectralVectorField& b, auto&& weight) {
  return weighted_energy(u, weight) + weighted_energy(b, weight);
}

// Pointwise |u|^2, |grad u|^2 and |grad |u|^2|^2 (chain rule) at point p.
struct Local {
  double m2, grad_sq, q;
};

Local local_at(const PointwiseKinematics& k, std::size_t p) {
  const double u0 = k.u[0][p], u1 = k.u[1][p], u2 = k.u[2][p];
  double grad_sq = 0.0, q = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double g0 = k.grad[0][j][p], g1 = k.grad[1][j][p], g2 = k.grad[2][j][p];
    grad_sq += g0 * g0 + g1 * g1 + g2 * g2;
    const double dj = 2.0 * (u0 * g0 + u1 * g1 + u2 * g2);
    q += dj * dj;
  }
  return {u0 * u0 + u1 * u1 + u2 * u2, grad_sq, q};
}

double quadrature(const PointwiseKinematics& k, auto&& integrand) {
  return k.grid.cell_volume() *
         detail::deterministic_sum(k.grid.size(), [&](std::size_t p) { return integrand(local_at(k, p)); });
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

CheckReport not_applicable(std::string name, std::string why) {
  CheckReport r;
  r.name = std::move(name);
  r.verdict = Verdict::not_applicable;
  r.detail = std::move(why);
  return r;
}

// Fills min/argmin/verdict from r.margins.
void judge(CheckReport& r, const EnergyLedger& ledger) {
  r.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.margins.size(); ++i) {
    if (!(r.margins[i] >= r.min_margin)) {
      r.min_margin = r.margins[i];
      r.at_time = ledger.rows[i].t;
    }
  }
  if (r.margins.empty()) r.min_margin = 0.0;
  r.verdict = r.min_margin >= -r.tolerance ? Verdict::pass : Verdict::fail;
}

}  // namespace

std::span<const LedgerColumn> ledger_columns() { return kColumns; }

void EnergyLedger::append(LedgerRow row) {
  if (!rows.empty()) {
    const LedgerRow& prev = rows.back();
    const double dt = row.t - prev.t;
    for (const auto& c : kIntegrated)
      row.*c.integral = prev.*c.integral + 0.5 * dt * (prev.*c.value + row.*c.value);
  } else {
    for (const auto& c : kIntegrated) row.*c.integral = 0.0;
  }
  rows.push_back(row);
}

LedgerRow ledger_row(const MhdState& state, const DampingSpec& damping, const Viscosity& viscosity,
                     int quadrature_points) {
  const SpectralVectorField& u = state.u;
  const SpectralVectorField& b = state.b;
  LedgerRow row;
  row.t = state.t;
  row.l2_sq = field_energy(u, b, [](int, int, int) { return 1.0; });
  row.h1dot_sq = field_energy(u, b, [](int kx, int ky, int kz) {
    return static_cast<double>(kx * kx + ky * ky + kz * kz);
  });
  row.h2dot_sq = field_energy(u, b, [](int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx * kx + ky * ky + kz * kz);
    return k2 * k2;
  });
  row.visc_diss = field_energy(u, b, [&](int kx, int ky, int kz) { return viscosity.rate(kx, ky, kz); });
  const double du = l2_norm(u.grid, divergence(u));
  const double db = l2_norm(b.grid, divergence(b));
  row.div_l2 = std::sqrt(du * du + db * db);

  if (damping.kind == DampingKind::none) return row;
  const PointwiseKinematics k = evaluate_kinematics(u, quadrature_points);
  if (damping.kind == DampingKind::power) {
    const double beta = damping.beta;
    row.lbeta = quadrature(k, [&](const Local& l) { return std::pow(l.m2, 0.5 * (beta + 1.0)); });
    row.d_beta_grad =
        quadrature(k, [&](const Local& l) { return std::pow(l.m2, 0.5 * (beta - 1.0)) * l.grad_sq; });
    row.d_beta_sq = quadrature(k, [&](const Local& l) {
      return l.m2 > 0.0 ? std::pow(l.m2, 0.5 * (beta - 3.0)) * l.q : 0.0;
    });
  } else {
    const Modifier f = damping.f;
    row.d_f4 = quadrature(k, [&](const Local& l) { return modifier_value(f, l.m2) * l.m2 * l.m2; });
    row.d_fprime =
        quadrature(k, [&](const Local& l) { return modifier_derivative(f, l.m2) * l.m2 * l.q; });
    row.d_fprime_literal =
        quadrature(k, [&](const Local& l) { return modifier_derivative(f, l.m2) * l.q; });
    row.d_f_gradsq = quadrature(k, [&](const Local& l) { return modifier_value(f, l.m2) * l.q; });
    row.d_f_grad =
        quadrature(k, [&](const Local& l) { return modifier_value(f, l.m2) * l.m2 * l.grad_sq; });
  }
  return row;
}

void write_ledger_csv(const EnergyLedger& ledger, std::ostream& out) {
  out << "step";
  for (const auto& c : kColumns) out << ',' << c.name;
  out << '\n';
  char buf[40];
  for (const auto& row : ledger.rows) {
    out << row.step;
    for (const auto& c : kColumns) {
      std::snprintf(buf, sizeof buf, "%.17g", row.*c.field);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_ledger_csv(const EnergyLedger& ledger, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_ledger_csv(ledger, out);
  out.flush();
  if (!out) throw IoError("write failed on '" + path + "'");
}

EnergyLedger read_ledger_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ":1: empty ledger file");
  {
    std::string expected = "step";
    for (const auto& c : kColumns) expected += "," + std::string(c.name);
    if (line != expected) throw ParseError(path + ":1: unexpected ledger header");
  }
  EnergyLedger ledger;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    LedgerRow row;
    std::size_t col = 0;
    try {
      std::getline(ss, cell, ',');
      row.step = std::stoll(cell);
      for (const auto& c : kColumns) {
        ++col;
        if (!std::getline(ss, cell, ',')) throw ParseError("missing column");
        row.*c.field = std::stod(cell);
      }
    } catch (const std::exception&) {
      const std::string name = col == 0 ? "step" : std::string(kColumns[col - 1].name);
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad value in column '" + name + "'");
    }
    ledger.rows.push_back(row);
  }
  return ledger;
}

CheckReport check_L2_inequality(const EnergyLedger& ledger, double tol_step) {
  CheckReport r;
  r.name = "L2 energy inequality";
  if (ledger.rows.empty()) return not_applicable(r.name, "empty ledger");
  const DampingSpec& d = ledger.damping;
  const double alpha = d.active() ? d.alpha : 0.0;
  const double l2_0 = ledger.rows.front().l2_sq;
  // A solver ledger carries the dissipation integrals accumulated with the
  // stage quadrature of every step. The trapezoid over sampled rows is only a
  // fallback: its error grows with the stride and swamps the tolerance.
  const bool stage = std::any_of(ledger.rows.begin(), ledger.rows.end(),
                                 [](const LedgerRow& row) { return row.energy_rk4 != 0.0; });
  double trapezoid_min = std::numeric_limits<double>::infinity();
  for (const auto& row : ledger.rows) {
    const double damp = d.kind == DampingKind::power ? row.int_lbeta
                        : d.kind == DampingKind::generalized ? row.int_d_f4
                                                             : 0.0;
    const double trap = l2_0 - (row.l2_sq + 2.0 * row.int_visc_diss + 2.0 * alpha * damp);
    trapezoid_min = std::min(trapezoid_min, trap);
    r.margins.push_back(stage ? l2_0 - (row.l2_sq + row.energy_rk4) : trap);
  }
  r.tolerance = tol_step * static_cast<double>(ledger.steps());
  judge(r, ledger);
  r.detail = "tolerance " + fmt(r.tolerance) + " over " + std::to_string(ledger.steps()) + " steps, " +
             (stage ? "stage quadrature; trapezoid over rows gives " + fmt(trapezoid_min)
                    : std::string("trapezoid over rows"));
  return r;
}

std::vector<double> energy_balance_residuals(const EnergyLedger& ledger) {
  std::vector<double> out;
  if (ledger.rows.empty()) return out;
  const double l2_0 = ledger.rows.front().l2_sq;
  for (const auto& row : ledger.rows) out.push_back(l2_0 - row.l2_sq - row.energy_rk4);
  return out;
}

double a_alpha(double alpha, Modifier f) {
  if (!(alpha > 0.0)) throw InvalidArgument("a_alpha: alpha must be > 0");
  const double y = 1.0 / (2.0 * alpha);
  if (y <= modifier_value(f, 0.0)) return 0.0;
  return *modifier_inverse(f, y);
}

std::vector<CheckReport> check_H1_inequalities(const EnergyLedger& ledger) {
  const DampingSpec& d = ledger.damping;
  if (d.kind == DampingKind::power) {
    const char* add = "H1 additive bound (power damping)";
    const char* exp = "H1 exponential bound (power damping)";
    std::string why;
    if (!d.active()) why = "no damping";
    else if (!(d.beta > 3.0)) why = "beta <= 3: c_{alpha,beta} undefined";
    else if (!ledger.viscosity.is_unit()) why = "bound holds for unit viscosity only";
    else if (ledger.rows.empty()) why = "empty ledger";
    if (!why.empty()) return {not_applicable(add, why), not_applicable(exp, why)};

    const double c = c_alpha_beta(d.alpha, d.beta);
    const double a = d.alpha;
    const LedgerRow& r0 = ledger.rows.front();
    CheckReport additive, exponential;
    additive.name = add;
    exponential.name = exp;
    for (const auto& row : ledger.rows) {
      const double lhs = row.h1dot_sq + row.int_h2dot_sq + 0.5 * a * (d.beta - 1.0) * row.int_d_beta_sq +
                         a * row.int_d_beta_grad;
      additive.margins.push_back(r0.h1dot_sq + c * r0.l2_sq - lhs);
      exponential.margins.push_back(r0.h1dot_sq * std::exp(2.0 * c * row.t) - lhs);
    }
    additive.tolerance = 1e-12 * (r0.h1dot_sq + c * r0.l2_sq);
    exponential.tolerance = 1e-12 * r0.h1dot_sq;
    judge(additive, ledger);
    judge(exponential, ledger);
    additive.detail = "c = " + fmt(c);
    exponential.detail = "rate 2c = " + fmt(2.0 * c);
    return {additive, exponential};
  }

  const char* name = "H1 exponential bound (generalized damping)";
  const char* literal = "H1 exponential bound, literal f' weight (informational)";
  if (d.kind != DampingKind::generalized || !d.active()) {
    auto r = not_applicable(name, "no damping");
    return {r};
  }
  if (!ledger.viscosity.is_unit() || ledger.rows.empty()) {
    const std::string why = ledger.rows.empty() ? "empty ledger" : "bound holds for unit viscosity only";
    auto lit = not_applicable(literal, why);
    lit.informational = true;
    return {not_applicable(name, why), lit};
  }
  const double rate = a_alpha(d.alpha, d.f);
  const double a = d.alpha;
  const LedgerRow& r0 = ledger.rows.front();
  CheckReport chain, lit;
  chain.name = name;
  lit.name = literal;
  lit.informational = true;
  for (const auto& row : ledger.rows) {
    const double common = row.h1dot_sq + row.int_h2dot_sq + a * row.int_d_f_gradsq + 2.0 * a * row.int_d_f_grad;
    const double rhs = r0.h1dot_sq * std::exp(rate * row.t);
    chain.margins.push_back(rhs - (common + a * row.int_d_fprime));
    lit.margins.push_back(rhs - (common + a * row.int_d_fprime_literal));
  }
  chain.tolerance = lit.tolerance = 1e-12 * r0.h1dot_sq;
  judge(chain, ledger);
  judge(lit, ledger);
  chain.detail = lit.detail = "a_alpha = " + fmt(rate);
  return {chain, lit};
}

IdentityReport check_damping_identity(const SpectralVectorField& u, const DampingSpec& damping,
                                      int quadrature_points, double tolerance) {
  IdentityReport r;
  const int m = quadrature_points > 0 ? quadrature_points : 2 * u.grid.n_modes;
  r.quadrature_points = m;
  if (damping.kind == DampingKind::none) {
    r.detail = "no damping";
    return r;
  }
  if (damping.kind == DampingKind::power && damping.beta < 3.0) {
    r.detail = "beta < 3: negative exponent at zeros of u";
    return r;
  }
  const PointwiseKinematics k = evaluate_kinematics(u, m);
  const GridSpec& gm = k.grid;

  // LHS: int grad(D) : grad u = vol sum_k |k|^2 Re(D(k) . conj u(k)).
  std::array<PhysicalScalar, 3> dp;
  for (auto& c : dp) c.resize(gm.size());
  detail::parallel_for(gm.size(), [&](std::size_t p) {
    const auto v = damping_at(damping, {k.u[0][p], k.u[1][p], k.u[2][p]});
    for (int c = 0; c < 3; ++c) dp[c][p] = v[c];
  });
  std::array<SpectralScalar, 3> dh;
  {
    const PhysicalScalar* in[] = {&dp[0], &dp[1], &dp[2]};
    SpectralScalar* out[] = {&dh[0], &dh[1], &dh[2]};
    to_spectral(gm, in, out);
  }
  double lhs = 0.0;
  for (int c = 0; c < 3; ++c) {
    const SpectralScalar uc = resample(u.c[c], u.grid.n_modes, m);
    double acc = 0.0;
    std::size_t p = 0;
    for_each_mode(gm, [&](int, int, int, int kx, int ky, int kz) {
      const double k2 = static_cast<double>(kx * kx + ky * ky + kz * kz);
      if (k2 != 0.0) acc += k2 * (dh[c][p] * std::conj(uc[p])).real();
      ++p;
    });
    lhs += acc;
  }
  r.lhs = gm.volume() * lhs;

  const double alpha = damping.alpha;
  if (damping.kind == DampingKind::power) {
    const double beta = damping.beta;
    r.rhs = alpha * quadrature(k, [&](const Local& l) {
      const double grad_term = std::pow(l.m2, 0.5 * (beta - 1.0)) * l.grad_sq;
      const double sq_term = l.m2 > 0.0 ? std::pow(l.m2, 0.5 * (beta - 3.0)) * l.q : 0.0;
      return grad_term + 0.25 * (beta - 1.0) * sq_term;
    });
  } else {
    const Modifier f = damping.f;
    r.rhs = alpha * quadrature(k, [&](const Local& l) {
      const double fv = modifier_value(f, l.m2);
      const double fp = modifier_derivative(f, l.m2);
      return fv * l.m2 * l.grad_sq + 0.5 * (fp * l.m2 + fv) * l.q;
    });
  }
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.relative_error = scale > 0.0 ? std::abs(r.lhs - r.rhs) / scale : 0.0;
  r.verdict = r.relative_error <= tolerance ? Verdict::pass : Verdict::fail;
  r.detail = "M = " + std::to_string(m);
  return r;
}

CheckReport gronwall_on_ledger(const EnergyLedger& ledger) {
  const char* name = "Gronwall self-check on H1 ledger";
  const DampingSpec& d = ledger.damping;
  double rate = 0.0;
  if (!d.active()) return not_applicable(name, "no damping");
  if (!ledger.viscosity.is_unit()) return not_applicable(name, "bound holds for unit viscosity only");
  if (d.kind == DampingKind::power) {
    if (!(d.beta > 3.0)) return not_applicable(name, "beta <= 3");
    rate = 2.0 * c_alpha_beta(d.alpha, d.beta);
  } else {
    rate = a_alpha(d.alpha, d.f);
  }
  if (ledger.rows.empty()) return not_applicable(name, "empty ledger");
  std::vector<double> t, f, g, h;
  for (const auto& row : ledger.rows) {
    t.push_back(row.t);
    f.push_back(row.h1dot_sq);
    g.push_back(row.h2dot_sq);
    h.push_back(rate);
  }
  const double scale = std::max(ledger.rows.front().h1dot_sq, std::numeric_limits<double>::min());
  const LemmaReport lr = gronwall_check(t, f, g, h, ledger.rows.front().h1dot_sq, 1e-9 * scale);
  CheckReport r;
  r.name = name;
  r.verdict = lr.verdict;
  r.min_margin = lr.worst_margin;
  r.tolerance = lr.tolerance;
  r.detail = lr.note.empty() ? "worst at " + lr.argmin : lr.note;
  r.informational = true;
  return r;
}

std::string format_checks(std::span<const CheckReport> reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << verdict_name(r.verdict) << "  " << r.name;
    if (r.verdict != Verdict::not_applicable || !r.margins.empty())
      out << "  min_margin=" << fmt(r.min_margin) << " at t=" << fmt(r.at_time)
          << " tol=" << fmt(r.tolerance);
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace mhdd
