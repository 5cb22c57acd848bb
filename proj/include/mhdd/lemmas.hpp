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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mhdd/damping.hpp"
#include "mhdd/verdict.hpp"

namespace mhdd {

/// Outcome of one sampled inequality check. `worst_margin` is the minimum of
/// RHS - LHS over the samples.
struct LemmaReport {
  std::string lemma_id;
  std::string parameters;
  std::size_t samples = 0;
  double worst_margin = 0.0;
  std::string argmin;
  Verdict verdict = Verdict::not_applicable;
  double tolerance = 1e-12;
  std::string note;
};

/// 1/2 (beta-3)/(beta-1) (alpha (beta-1)/2)^(-2/(beta-3)).
/// Throws InvalidArgument unless alpha > 0 and beta > 3.
double c_alpha_beta(double alpha, double beta);

/// Minimizer (2/(alpha (beta-1)))^(1/(beta-3)) of 2c + alpha x^(beta-1) - x^2.
double interpolation_minimizer(double alpha, double beta);

/// 2c + alpha x^(beta-1) - x^2, evaluated in extended precision.
double interpolation_margin(double alpha, double beta, double x);

struct InterpolationReport {
  LemmaReport report;
  double c = 0.0;
  double x_star = 0.0;
  double margin_at_x_star = 0.0;
};

/// Grid margins plus sharpness at x*. Passes iff every margin is >= -1e-12
/// and |margin(x*)| <= 1e-10. beta <= 3 gives NOT-APPLICABLE.
InterpolationReport check_interpolation(double alpha, double beta, std::span<const double> x_grid);

using Vec3 = std::array<double, 3>;

/// <f(|x|^2)|x|^2 x - f(|y|^2)|y|^2 y, x - y>, computed in extended precision.
double monotonicity_gap(const Vec3& x, const Vec3& y, Modifier f);

/// The same quantity split into two parts:
///   radial    = (f(|x|^2)|x|^2 - f(|y|^2)|y|^2)(|x|^2 - |y|^2) / 2
///   isotropic = (f(|x|^2)|x|^2 + f(|y|^2)|y|^2) |x - y|^2 / 2
/// Both are nonnegative for increasing f and they sum to the gap.
struct MonotonicitySplit {
  double radial = 0.0;
  double isotropic = 0.0;
};
MonotonicitySplit monotonicity_split(const Vec3& x, const Vec3& y, Modifier f);

/// Random pairs with components log-uniform in magnitude over
/// [scale_lo, scale_hi] and random signs.
LemmaReport check_monotonicity(Modifier f, std::size_t samples, std::uint64_t seed,
                          double scale_lo = 1e-3, double scale_hi = 1e3);

/// Gronwall on sampled series: if f(t) + int_0^t g <= A + int_0^t h f holds
/// at every sample (trapezoid integrals, within `tolerance`), checks
/// f(t) + int_0^t g <= A exp(int_0^t h). Otherwise NOT-APPLICABLE.
LemmaReport gronwall_check(std::span<const double> t, std::span<const double> f,
                           std::span<const double> g, std::span<const double> h, double A,
                           double tolerance = 1e-9);

/// Tightest constants of a z^2 <= f(z) <= b z^(beta-1) over a grid in [1, inf).
struct HypothesisReport {
  Modifier f = Modifier::log1;
  double beta = 0.0;
  std::size_t samples = 0;
  double a_star = 0.0;  // min f(z)/z^2
  double a_argmin = 0.0;
  double b_star = 0.0;  // max f(z)/z^(beta-1)
  double b_argmax = 0.0;
  bool upper_holds = false;  // b_star finite and positive
  /// First grid point where f(z)/z^2 falls below 1e-3 of its value at the
  /// first grid point; zero if it never does.
  double lower_degenerates_from = 0.0;
  std::string summary;
};
HypothesisReport hypothesis_H_report(Modifier f, double beta, std::span<const double> z_grid);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double lo_exp10, double hi_exp10, std::size_t n);

/// Text and CSV renderings. The CSV has columns
/// lemma,parameters,samples,worst_margin,argmin,verdict.
std::string format_lemma_report(const LemmaReport& r);
void write_lemma_csv(std::span<const LemmaReport> reports, std::ostream& out);

}  // namespace mhdd
