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

#include "mhdd/lemmas.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

using LD = long double;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string vec_str(const Vec3& v) {
  return "(" + fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]) + ")";
}

LD c_ld(LD alpha, LD beta) {
  return 0.5L * (beta - 3.0L) / (beta - 1.0L) *
         std::pow(alpha * (beta - 1.0L) / 2.0L, -2.0L / (beta - 3.0L));
}

void require_domain(double alpha, double beta, const char* who) {
  if (!(alpha > 0.0)) throw InvalidArgument(std::string(who) + ": alpha must be > 0");
  if (!(beta > 3.0)) throw InvalidArgument(std::string(who) + ": beta must be > 3");
}

LD phi(Modifier f, LD r2) { return static_cast<LD>(modifier_value(f, static_cast<double>(r2))) * r2; }

LD norm2(const Vec3& v) {
  return static_cast<LD>(v[0]) * v[0] + static_cast<LD>(v[1]) * v[1] + static_cast<LD>(v[2]) * v[2];
}

// Trapezoidal running integral of y over t.
std::vector<LD> running_integral(std::span<const double> t, auto&& y) {
  std::vector<LD> out(t.size(), 0.0L);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5L * (static_cast<LD>(t[i]) - t[i - 1]) * (y(i - 1) + y(i));
  return out;
}

}  // namespace

double c_alpha_beta(double alpha, double beta) {
  require_domain(alpha, beta, "c_alpha_beta");
  return static_cast<double>(c_ld(alpha, beta));
}

double interpolation_minimizer(double alpha, double beta) {
  require_domain(alpha, beta, "interpolation_minimizer");
  return static_cast<double>(
      std::pow(2.0L / (static_cast<LD>(alpha) * (beta - 1.0L)), 1.0L / (static_cast<LD>(beta) - 3.0L)));
}

double interpolation_margin(double alpha, double beta, double x) {
  require_domain(alpha, beta, "interpolation_margin");
  const LD xl = x;
  return static_cast<double>(2.0L * c_ld(alpha, beta) + static_cast<LD>(alpha) * std::pow(xl, static_cast<LD>(beta) - 1.0L) -
                             xl * xl);
}

InterpolationReport check_interpolation(double alpha, double beta, std::span<const double> x_grid) {
  InterpolationReport out;
  LemmaReport& r = out.report;
  r.lemma_id = "interpolation";
  r.parameters = "alpha=" + fmt(alpha) + " beta=" + fmt(beta);
  r.samples = x_grid.size();
  if (!(alpha > 0.0) || !(beta > 3.0)) {
    r.verdict = Verdict::not_applicable;
    r.note = "requires alpha > 0 and beta > 3";
    return out;
  }
  out.c = c_alpha_beta(alpha, beta);
  out.x_star = interpolation_minimizer(alpha, beta);
  out.margin_at_x_star = interpolation_margin(alpha, beta, out.x_star);
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (double x : x_grid) {
    if (x < 0.0) throw InvalidArgument("check_interpolation: x grid must lie in [0, inf)");
    const double m = interpolation_margin(alpha, beta, x);
    if (!(m >= r.worst_margin)) {
      r.worst_margin = m;
      r.argmin = "x=" + fmt(x);
    }
  }
  if (x_grid.empty()) r.worst_margin = 0.0;
  const bool sharp = std::abs(out.margin_at_x_star) <= 1e-10;
  r.verdict = r.worst_margin >= -r.tolerance && sharp ? Verdict::pass : Verdict::fail;
  r.note = "c=" + fmt(out.c) + " x*=" + fmt(out.x_star) + " margin(x*)=" + fmt(out.margin_at_x_star);
  return out;
}

double monotonicity_gap(const Vec3& x, const Vec3& y, Modifier f) {
  const LD px = phi(f, norm2(x));
  const LD py = phi(f, norm2(y));
  LD acc = 0.0L;
  for (int i = 0; i < 3; ++i) {
    const LD xi = x[i], yi = y[i];
    acc += (px * xi - py * yi) * (xi - yi);
  }
  return static_cast<double>(acc);
}

MonotonicitySplit monotonicity_split(const Vec3& x, const Vec3& y, Modifier f) {
  const LD nx = norm2(x), ny = norm2(y);
  const LD px = phi(f, nx), py = phi(f, ny);
  Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
  return {static_cast<double>(0.5L * (px - py) * (nx - ny)),
          static_cast<double>(0.5L * (px + py) * norm2(d))};
}

LemmaReport check_monotonicity(Modifier f, std::size_t samples, std::uint64_t seed, double scale_lo,
                          double scale_hi) {
  LemmaReport r;
  r.lemma_id = "monotonicity";
  r.parameters = "f=" + std::string(modifier_name(f)) + " scales=[" + fmt(scale_lo) + "," + fmt(scale_hi) + "]";
  r.samples = samples;
  if (!(scale_lo > 0.0) || !(scale_hi >= scale_lo))
    throw InvalidArgument("check_monotonicity: need 0 < scale_lo <= scale_hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> expo(std::log10(scale_lo), std::log10(scale_hi));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  auto magnitude = [&] { return std::pow(10.0, expo(rng)); };
  auto sign = [&] { return unit(rng) < 0.0 ? -1.0 : 1.0; };

  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    Vec3 x, y;
    switch (s % 3) {
      case 0:  // independent magnitudes per component
        for (int i = 0; i < 3; ++i) {
          x[i] = sign() * magnitude();
          y[i] = sign() * magnitude();
        }
        break;
      case 1: {  // one scale per vector, Gaussian direction
        const double sx = magnitude(), sy = magnitude();
        for (int i = 0; i < 3; ++i) {
          x[i] = sx * gauss(rng);
          y[i] = sy * gauss(rng);
        }
        break;
      }
      default: {  // nearly coincident pair
        const double sx = magnitude();
        const double rel = std::pow(10.0, -12.0 * (0.5 * unit(rng) + 0.5));
        for (int i = 0; i < 3; ++i) {
          x[i] = sx * gauss(rng);
          y[i] = x[i] * (1.0 + rel * unit(rng));
        }
        break;
      }
    }
    const double g = monotonicity_gap(x, y, f);
    if (!(g >= r.worst_margin)) {
      r.worst_margin = g;
      r.argmin = "x=" + vec_str(x) + " y=" + vec_str(y);
    }
  }
  if (samples == 0) r.worst_margin = 0.0;
  r.verdict = r.worst_margin >= -r.tolerance ? Verdict::pass : Verdict::fail;
  return r;
}

LemmaReport gronwall_check(std::span<const double> t, std::span<const double> f, std::span<const double> g,
                           std::span<const double> h, double A, double tolerance) {
  LemmaReport r;
  r.lemma_id = "gronwall";
  r.parameters = "A=" + fmt(A);
  r.samples = t.size();
  r.tolerance = tolerance;
  if (f.size() != t.size() || g.size() != t.size() || h.size() != t.size())
    throw InvalidArgument("gronwall_check: series lengths differ");
  if (t.empty()) {
    r.verdict = Verdict::not_applicable;
    r.note = "no samples";
    return r;
  }
  const auto G = running_integral(t, [&](std::size_t i) { return static_cast<LD>(g[i]); });
  const auto H = running_integral(t, [&](std::size_t i) { return static_cast<LD>(h[i]); });
  const auto HF =
      running_integral(t, [&](std::size_t i) { return static_cast<LD>(h[i]) * static_cast<LD>(f[i]); });

  for (std::size_t i = 0; i < t.size(); ++i) {
    const LD hyp = static_cast<LD>(A) + HF[i] - (static_cast<LD>(f[i]) + G[i]);
    if (hyp < -static_cast<LD>(tolerance)) {
      r.verdict = Verdict::not_applicable;
      r.note = "hypothesis fails at t=" + fmt(t[i]) + " by " + fmt(static_cast<double>(-hyp));
      return r;
    }
  }
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double m = static_cast<double>(static_cast<LD>(A) * std::exp(H[i]) - (static_cast<LD>(f[i]) + G[i]));
    if (!(m >= r.worst_margin)) {
      r.worst_margin = m;
      r.argmin = "t=" + fmt(t[i]);
    }
  }
  r.verdict = r.worst_margin >= -tolerance ? Verdict::pass : Verdict::fail;
  return r;
}

HypothesisReport hypothesis_H_report(Modifier f, double beta, std::span<const double> z_grid) {
  HypothesisReport r;
  r.f = f;
  r.beta = beta;
  r.samples = z_grid.size();
  r.a_star = std::numeric_limits<double>::infinity();
  r.b_star = 0.0;
  double first_lower = 0.0;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid[i];
    if (z < 1.0) throw InvalidArgument("hypothesis_H_report: z grid must lie in [1, inf)");
    const double fz = modifier_value(f, z);
    const double lower = fz / (z * z);
    const double upper = fz / std::pow(z, beta - 1.0);
    if (i == 0) first_lower = lower;
    if (lower < r.a_star) {
      r.a_star = lower;
      r.a_argmin = z;
    }
    if (upper > r.b_star) {
      r.b_star = upper;
      r.b_argmax = z;
    }
    if (r.lower_degenerates_from == 0.0 && lower < 1e-3 * first_lower) r.lower_degenerates_from = z;
  }
  if (z_grid.empty()) r.a_star = 0.0;
  r.upper_holds = std::isfinite(r.b_star) && r.b_star > 0.0;
  std::ostringstream s;
  s << "f=" << modifier_name(f) << " beta=" << fmt(beta) << ": min f(z)/z^2 = " << fmt(r.a_star)
    << " at z=" << fmt(r.a_argmin) << "; max f(z)/z^(beta-1) = " << fmt(r.b_star) << " at z=" << fmt(r.b_argmax)
    << "; upper bound " << (r.upper_holds ? "holds" : "fails") << " on the grid; ";
  if (r.lower_degenerates_from > 0.0)
    s << "lower constant degenerates (ratio < 1e-3 of its value at z=" << fmt(z_grid.front())
      << ") from z=" << fmt(r.lower_degenerates_from);
  else
    s << "lower constant stays within 1e-3 of its initial value on the grid";
  r.summary = s.str();
  return r;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) out[0] = a;
  for (std::size_t i = 0; n > 1 && i < n; ++i)
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> logspace(double lo_exp10, double hi_exp10, std::size_t n) {
  std::vector<double> out = linspace(lo_exp10, hi_exp10, n);
  for (double& v : out) v = std::pow(10.0, v);
  return out;
}

std::string format_lemma_report(const LemmaReport& r) {
  std::ostringstream s;
  s << verdict_name(r.verdict) << "  " << r.lemma_id << "  " << r.parameters << "  samples=" << r.samples;
  if (r.verdict != Verdict::not_applicable) s << "  worst_margin=" << fmt(r.worst_margin) << " at " << r.argmin;
  if (!r.note.empty()) s << "  (" << r.note << ")";
  return s.str();
}

void write_lemma_csv(std::span<const LemmaReport> reports, std::ostream& out) {
  out << "lemma,parameters,samples,worst_margin,argmin,verdict\n";
  char buf[40];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%.17g", r.worst_margin);
    out << r.lemma_id << ",\"" << r.parameters << "\"," << r.samples << ',' << buf << ",\"" << r.argmin << "\","
        << verdict_name(r.verdict) << '\n';
  }
}

}  // namespace mhdd
