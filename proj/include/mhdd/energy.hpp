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

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mhdd/damping.hpp"
#include "mhdd/fields.hpp"
#include "mhdd/nonlinear.hpp"
#include "mhdd/verdict.hpp"

namespace mhdd {

/// Norms and dissipation integrals of one sampled state.
///
/// Quadratic norms are exact Parseval sums. Damping integrands are evaluated
/// pointwise on a quadrature grid; |grad |u|^2| uses the chain rule
/// 2 u_i grad u_i at the points. The `int_*` members are running trapezoidal
/// integrals over the ledger rows, filled in by EnergyLedger::append.
struct LedgerRow {
  long long step = 0;
  double t = 0.0;
  double l2_sq = 0.0;        // ||w||^2
  double h1dot_sq = 0.0;     // ||grad w||^2
  double h2dot_sq = 0.0;     // ||Delta w||^2
  double visc_diss = 0.0;    // nu_h ||grad_h w||^2 + nu_v ||d_3 w||^2
  double lbeta = 0.0;        // ||u||_{L^{beta+1}}^{beta+1}
  double d_beta_grad = 0.0;  // || |u|^{beta-1} |grad u|^2 ||_{L1}
  double d_beta_sq = 0.0;    // || |u|^{beta-3} |grad |u|^2|^2 ||_{L1}
  double d_f4 = 0.0;         // || f(|u|^2) |u|^4 ||_{L1}
  double d_fprime = 0.0;     // || f'(|u|^2) |u|^2 |grad |u|^2|^2 ||_{L1}
  double d_fprime_literal = 0.0;  // || f'(|u|^2) |grad |u|^2|^2 ||_{L1}
  double d_f_gradsq = 0.0;   // || f(|u|^2) |grad |u|^2|^2 ||_{L1}
  double d_f_grad = 0.0;     // || f(|u|^2) |u|^2 |grad u|^2 ||_{L1}
  double div_l2 = 0.0;       // sqrt(||div u||^2 + ||div b||^2)

  double int_h1dot_sq = 0.0;
  double int_h2dot_sq = 0.0;
  double int_visc_diss = 0.0;
  double int_lbeta = 0.0;
  double int_d_beta_grad = 0.0;
  double int_d_beta_sq = 0.0;
  double int_d_f4 = 0.0;
  double int_d_fprime = 0.0;
  double int_d_fprime_literal = 0.0;
  double int_d_f_gradsq = 0.0;
  double int_d_f_grad = 0.0;

  /// Energy drained since t0 (2 visc_diss + 2 <D(u),u>), accumulated with the
  /// integrator's own stage quadrature. Zero outside a solver run.
  double energy_rk4 = 0.0;

  bool operator==(const LedgerRow&) const = default;
};

struct LedgerColumn {
  std::string_view name;
  double LedgerRow::*field;
};

/// Every floating-point column in CSV order (the integer `step` column
/// precedes them).
std::span<const LedgerColumn> ledger_columns();

/// Time series of ledger rows for one run.
struct EnergyLedger {
  DampingSpec damping;
  Viscosity viscosity;
  std::vector<LedgerRow> rows;

  /// Appends a row and fills its running integrals from the previous row.
  void append(LedgerRow row);
  long long steps() const { return rows.empty() ? 0 : rows.back().step - rows.front().step; }
};

/// quadrature_points <= 0 selects the collocation grid of the state.
LedgerRow ledger_row(const MhdState& state, const DampingSpec& damping,
                     const Viscosity& viscosity = {}, int quadrature_points = 0);

void write_ledger_csv(const EnergyLedger& ledger, std::ostream& out);
void write_ledger_csv(const EnergyLedger& ledger, const std::string& path);
/// Parses a CSV written by write_ledger_csv. Damping and viscosity are not
/// stored in the file and are left at their defaults.
EnergyLedger read_ledger_csv(const std::string& path);

/// Result of checking one inequality along a ledger.
struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::not_applicable;
  double min_margin = 0.0;   // min over rows of (RHS - LHS)
  double at_time = 0.0;      // time of the minimum
  double tolerance = 0.0;    // margins >= -tolerance pass
  std::vector<double> margins;  // one per ledger row
  std::string detail;
  /// Reported for information; never affects an exit status.
  bool informational = false;
};

/// ||w0||^2 - [||w||^2 + 2 int visc + 2 alpha int damping] per row, where the
/// damping column is lbeta (power) or d_f4 (generalized). The integrals come
/// from energy_rk4 when the ledger has it, otherwise from the trapezoid
/// columns. Passes when the minimum is >= -tol_step * steps.
CheckReport check_L2_inequality(const EnergyLedger& ledger, double tol_step = 1e-9);

/// ||w0||^2 - ||w||^2 - energy_rk4 per row: the discrete energy identity
/// with the integrator's stage quadrature in place of the trapezoid rule.
std::vector<double> energy_balance_residuals(const EnergyLedger& ledger);

/// Power damping: the additive bound
///   ||grad w||^2 + int ||Delta w||^2 + alpha (beta-1)/2 int d_beta_sq
///     + alpha int d_beta_grad <= ||grad w0||^2 + c ||w0||^2
/// and the exponential bound with RHS ||grad w0||^2 e^{2 c t}.
/// Generalized damping: the exponential bound
///   ||grad w||^2 + int ||Delta w||^2 + alpha int d_fprime + alpha int d_f_gradsq
///     + 2 alpha int d_f_grad <= ||grad w0||^2 e^{a_alpha t},
/// judged with the chain-rule weight f'(|u|^2)|u|^2; the literal-weight
/// reading is reported as a third, informational entry.
/// NOT-APPLICABLE for no damping, beta <= 3, or non-unit viscosity.
std::vector<CheckReport> check_H1_inequalities(const EnergyLedger& ledger);

/// Rate f^{-1}(1/(2 alpha)) of the exponential H1 bound; zero when
/// 1/(2 alpha) <= f(0), where the damping dominates everywhere.
double a_alpha(double alpha, Modifier f);

/// Integral form of the pointwise identity for grad(D(u)) : grad u.
struct IdentityReport {
  Verdict verdict = Verdict::not_applicable;
  double lhs = 0.0;  // int grad(D(u)) : grad u via spectral differentiation of D
  double rhs = 0.0;  // quadrature of the decomposition
  double relative_error = 0.0;
  int quadrature_points = 0;
  std::string detail;
};

/// power:       int grad(|u|^{b-1}u):grad u = alpha[d_beta_grad + (b-1)/4 d_beta_sq]
/// generalized: = alpha[int f|u|^2|grad u|^2 + 1/2 int (f'|u|^2 + f)|grad|u|^2|^2]
/// NOT-APPLICABLE for beta < 3 (negative exponent at zeros of u) or no damping.
/// quadrature_points <= 0 selects 2N, which makes the beta = 3 case exact for
/// fields truncated at R <= N/2.
IdentityReport check_damping_identity(const SpectralVectorField& u, const DampingSpec& damping,
                                      int quadrature_points = 0, double tolerance = 1e-6);

/// Feeds the ledger into the Gronwall lemma with f = ||grad w||^2,
/// h = 2c (power) or a_alpha (generalized) and A = ||grad w0||^2.
CheckReport gronwall_on_ledger(const EnergyLedger& ledger);

/// Plain-text block listing each report.
std::string format_checks(std::span<const CheckReport> reports);

}  // namespace mhdd
