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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "mhdd/energy.hpp"
#include "mhdd/integrator.hpp"
#include "mhdd/spectral_ops.hpp"
#include "oracles.hpp"

using namespace mhdd;

namespace {

constexpr double pi = std::numbers::pi;

MhdState sin_state(const GridSpec& g) {
  MhdState s = MhdState::zeros(g);
  s.u.c[0][g.index(0, 0, 1)] = Complex(0.0, -0.5);
  s.u.c[0][g.index(0, 0, g.n_modes - 1)] = Complex(0.0, 0.5);
  return s;
}

// 4 pi^2 * int_0^{2pi} fn(sin z, cos z) dz by a fine trapezoid rule, which
// converges spectrally for smooth periodic integrands.
template <class Fn>
double box_integral(Fn&& fn) {
  const int n = 4096;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = 2.0 * pi * i / n;
    acc += fn(std::sin(z), std::cos(z));
  }
  return 4.0 * pi * pi * acc * 2.0 * pi / n;
}

SolverConfig small_config(DampingSpec d) {
  SolverConfig c;
  c.grid = GridSpec::make(16);
  c.damping = d;
  c.initial.kind = InitialKind::random_divfree;
  c.initial.target_h1 = 1.0;
  c.seed = 5;
  c.dt = 2e-3;
  c.t_end = 0.1;
  c.ledger_stride = 5;
  return c;
}

}  // namespace

TEST_CASE("ledger columns for sin(x3) e1") {
  const GridSpec g = GridSpec::make(16);
  const MhdState s = sin_state(g);
  const double half = g.volume() / 2.0;

  SUBCASE("quadratic norms and beta = 3 damping") {
    const LedgerRow r = ledger_row(s, DampingSpec::power(1.0, 3.0));
    CHECK(r.l2_sq == doctest::Approx(half).epsilon(1e-14));
    CHECK(r.h1dot_sq == doctest::Approx(half).epsilon(1e-14));
    CHECK(r.h2dot_sq == doctest::Approx(half).epsilon(1e-14));
    CHECK(r.visc_diss == doctest::Approx(half).epsilon(1e-14));
    CHECK(r.div_l2 == 0.0);
    CHECK(r.lbeta == doctest::Approx(3.0 * pi * pi * pi).epsilon(1e-13));
    CHECK(r.d_beta_grad == doctest::Approx(pi * pi * pi).epsilon(1e-13));
    CHECK(r.d_beta_sq == doctest::Approx(4.0 * pi * pi * pi).epsilon(1e-13));
  }
  SUBCASE("anisotropic viscosity only sees d_3") {
    const LedgerRow r = ledger_row(s, DampingSpec::none(), Viscosity{5.0, 0.5});
    CHECK(r.visc_diss == doctest::Approx(0.5 * half).epsilon(1e-14));
  }
  SUBCASE("generalized columns against a fine 1-D quadrature") {
    for (Modifier f : kAllModifiers) {
      const LedgerRow r = ledger_row(s, DampingSpec::generalized(1.0, f), {}, 128);
      auto fv = [f](double s2) { return modifier_value(f, s2); };
      auto fp = [f](double s2) { return modifier_derivative(f, s2); };
      // |u|^2 = sin^2, |grad u|^2 = cos^2, |grad |u|^2|^2 = 4 sin^2 cos^2
      CHECK(r.d_f4 == doctest::Approx(box_integral([&](double sn, double) {
              return fv(sn * sn) * std::pow(sn, 4);
            })).epsilon(1e-10));
      CHECK(r.d_fprime == doctest::Approx(box_integral([&](double sn, double cs) {
              return fp(sn * sn) * sn * sn * 4 * sn * sn * cs * cs;
            })).epsilon(1e-10));
      CHECK(r.d_fprime_literal == doctest::Approx(box_integral([&](double sn, double cs) {
              return fp(sn * sn) * 4 * sn * sn * cs * cs;
            })).epsilon(1e-10));
      CHECK(r.d_f_gradsq == doctest::Approx(box_integral([&](double sn, double cs) {
              return fv(sn * sn) * 4 * sn * sn * cs * cs;
            })).epsilon(1e-10));
      CHECK(r.d_f_grad == doctest::Approx(box_integral([&](double sn, double cs) {
              return fv(sn * sn) * sn * sn * cs * cs;
            })).epsilon(1e-10));
    }
  }
}

TEST_CASE("trapezoid running integrals") {
  EnergyLedger l;
  LedgerRow a, b, c;
  a.t = 0.0;
  a.h1dot_sq = 1.0;
  b.t = 0.5;
  b.step = 5;
  b.h1dot_sq = 3.0;
  c.t = 1.0;
  c.step = 10;
  c.h1dot_sq = 3.0;
  l.append(a);
  l.append(b);
  l.append(c);
  CHECK(l.rows[0].int_h1dot_sq == 0.0);
  CHECK(l.rows[1].int_h1dot_sq == doctest::Approx(1.0));
  CHECK(l.rows[2].int_h1dot_sq == doctest::Approx(2.5));
  CHECK(l.steps() == 10);
}

TEST_CASE("ledger CSV round trip") {
  const RunResult r = run(small_config(DampingSpec::power(1.0, 4.0)));
  const auto path = std::filesystem::temp_directory_path() / "mhdd_test_ledger.csv";
  write_ledger_csv(r.ledger, path.string());
  const EnergyLedger back = read_ledger_csv(path.string());
  CHECK(back.rows == r.ledger.rows);
  std::filesystem::remove(path);
  std::ostringstream out;
  write_ledger_csv(r.ledger, out);
  CHECK(out.str().rfind("step,t,l2_sq,", 0) == 0);
  CHECK(ledger_columns().size() == 26);
  CHECK_THROWS_AS(read_ledger_csv("/nonexistent/ledger.csv"), IoError);
}

TEST_CASE("L2 inequality along damped runs") {
  for (const DampingSpec& d : {DampingSpec::power(1.0, 4.0), DampingSpec::generalized(1.0, Modifier::log1)}) {
    const RunResult r = run(small_config(d));
    const CheckReport rep = check_L2_inequality(r.ledger);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.margins.size() == r.ledger.rows.size());
    CHECK(rep.tolerance == doctest::Approx(1e-9 * r.steps));

    EnergyLedger tampered = r.ledger;
    tampered.rows.back().l2_sq *= 1.01;
    CHECK(check_L2_inequality(tampered).verdict == Verdict::fail);
  }
  EnergyLedger empty;
  CHECK(check_L2_inequality(empty).verdict == Verdict::not_applicable);
}

TEST_CASE("stage-quadrature energy balance is tight") {
  const RunResult r = run(small_config(DampingSpec::power(1.0, 4.0)));
  const auto res = energy_balance_residuals(r.ledger);
  const double e0 = r.ledger.rows.front().l2_sq;
  for (double x : res) CHECK(std::abs(x) <= 1e-6 * e0);
  CHECK(res.front() == 0.0);
}

TEST_CASE("H1 inequalities") {
  SUBCASE("power damping beta = 5 on small data") {
    SolverConfig c = small_config(DampingSpec::power(1.0, 5.0));
    c.initial.target_h1 = 0.01;
    const auto reps = check_H1_inequalities(run(c).ledger);
    REQUIRE(reps.size() == 2);
    for (const auto& r : reps) {
      CHECK(r.verdict == Verdict::pass);
      CHECK(r.min_margin >= 0.0);
    }
  }
  SUBCASE("generalized damping") {
    SolverConfig c = small_config(DampingSpec::generalized(1.0, Modifier::log1));
    c.initial.target_h1 = 0.01;
    const auto reps = check_H1_inequalities(run(c).ledger);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].verdict == Verdict::pass);
    CHECK(reps[1].informational);
  }
  SUBCASE("not applicable cases") {
    EnergyLedger l;
    l.append(ledger_row(sin_state(GridSpec::make(8)), DampingSpec::power(1.0, 3.0)));
    l.damping = DampingSpec::power(1.0, 3.0);
    for (const auto& r : check_H1_inequalities(l)) CHECK(r.verdict == Verdict::not_applicable);
    l.damping = DampingSpec::power(1.0, 5.0);
    l.viscosity = Viscosity{2.0, 1.0};
    for (const auto& r : check_H1_inequalities(l)) CHECK(r.verdict == Verdict::not_applicable);
    l.damping = DampingSpec::none();
    for (const auto& r : check_H1_inequalities(l)) CHECK(r.verdict == Verdict::not_applicable);
  }
}

TEST_CASE("a_alpha rule") {
  CHECK(a_alpha(0.1, Modifier::log1) == doctest::Approx(std::exp(5.0) - std::numbers::e).epsilon(1e-12));
  CHECK(a_alpha(0.1, Modifier::log1) == doctest::Approx(145.695).epsilon(1e-5));
  CHECK(a_alpha(1.0, Modifier::log1) == 0.0);
  CHECK(a_alpha(0.5, Modifier::log2) == 0.0);  // 1/(2 alpha) = f(0)
  CHECK(a_alpha(0.25, Modifier::log1) == doctest::Approx(std::exp(2.0) - std::numbers::e).epsilon(1e-12));
  CHECK_THROWS_AS(a_alpha(0.0, Modifier::log1), InvalidArgument);
}

TEST_CASE("damping identity in integral form") {
  const GridSpec g = GridSpec::make(16);
  SpectralVectorField u = testing::random_bandlimited_field(g, 11, g.truncation_radius, 1.0);
  leray_project_in_place(u);
  SUBCASE("beta = 3 is exact on the 2N grid") {
    const IdentityReport r = check_damping_identity(u, DampingSpec::power(1.0, 3.0));
    CHECK(r.quadrature_points == 32);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.relative_error <= 1e-10);
  }
  SUBCASE("generalized mismatch shrinks with the quadrature grid") {
    const DampingSpec d = DampingSpec::generalized(1.0, Modifier::log1);
    const double e1 = check_damping_identity(u, d, 32).relative_error;
    const double e2 = check_damping_identity(u, d, 64).relative_error;
    MESSAGE("mismatch " << e1 << " -> " << e2);
    CHECK(e2 <= e1 / 4.0);
  }
  SUBCASE("not applicable") {
    CHECK(check_damping_identity(u, DampingSpec::power(1.0, 2.5)).verdict == Verdict::not_applicable);
    CHECK(check_damping_identity(u, DampingSpec::none()).verdict == Verdict::not_applicable);
  }
}

TEST_CASE("Gronwall on a ledger is informational") {
  SolverConfig c = small_config(DampingSpec::power(1.0, 5.0));
  c.initial.target_h1 = 0.01;
  const CheckReport r = gronwall_on_ledger(run(c).ledger);
  CHECK(r.informational);
  CHECK(r.verdict != Verdict::fail);
  CHECK_FALSE(format_checks(std::vector<CheckReport>{r}).empty());
}
