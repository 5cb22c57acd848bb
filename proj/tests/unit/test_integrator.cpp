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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mhdd/checkpoint.hpp"
#include "mhdd/integrator.hpp"
#include "mhdd/spectral_ops.hpp"
#include "oracles.hpp"

using namespace mhdd;

namespace {

SolverConfig base_config(int n) {
  SolverConfig c;
  c.grid = GridSpec::make(n);
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.ledger_stride = 100;
  return c;
}

double state_distance(const MhdState& a, const MhdState& b) {
  return std::max(max_abs_difference(a.u, b.u), max_abs_difference(a.b, b.b));
}

MhdState integrate(const SolverConfig& c) { return run(c).final_state; }

}  // namespace

TEST_CASE("step_count lands on t_end") {
  CHECK(step_count(0.0, 1.0, 1e-3) == 1000);
  CHECK(step_count(0.0, 0.0, 1e-3) == 0);
  CHECK(step_count(0.0, 0.25, 0.1) == 3);
}

TEST_CASE("the zero state stays zero") {
  SolverConfig c = base_config(8);
  c.t_end = 0.05;
  c.damping = DampingSpec::power(1.0, 4.0);
  const RunResult r = run(c, MhdState::zeros(c.grid));
  CHECK(max_abs(r.final_state.u) == 0.0);
  CHECK(max_abs(r.final_state.b) == 0.0);
  CHECK(r.final_state.t == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("sin(x3) e1 decays as exp(-t) sin(x3)") {
  SolverConfig c = base_config(16);
  c.initial.kind = InitialKind::single_mode;
  c.initial.wavevector = {0, 0, 1};
  const MhdState s0 = make_initial(c.initial, c.grid, 0);
  const PhysicalVectorField p0 = inverse_transform(s0.u);
  const PhysicalScalar ref = testing::sample(c.grid, [](double, double, double z) { return std::sin(z); });
  for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(p0.v[0][i] == doctest::Approx(ref[i]).scale(1.0).epsilon(1e-14));

  const MhdState s = integrate(c);
  const PhysicalVectorField p = inverse_transform(s.u);
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    err = std::max(err, std::abs(p.v[0][i] - std::exp(-1.0) * ref[i]));
    err = std::max(err, std::abs(p.v[1][i]) + std::abs(p.v[2][i]));
  }
  CHECK(err <= 1e-8);
}

TEST_CASE("fourth-order convergence on a nonlinear Taylor-Green state") {
  SolverConfig c = base_config(16);
  c.initial.kind = InitialKind::taylor_green_like;
  c.initial.amplitude = 2.0;
  c.t_end = 0.2;
  c.dt = 2.5e-4;
  const MhdState ref = integrate(c);
  double errs[3];
  const double dts[3] = {0.02, 0.01, 0.005};
  for (int i = 0; i < 3; ++i) {
    c.dt = dts[i];
    errs[i] = state_distance(integrate(c), ref);
  }
  const double slope = std::log(errs[0] / errs[2]) / std::log(dts[0] / dts[2]);
  MESSAGE("errors " << errs[0] << " " << errs[1] << " " << errs[2] << " slope " << slope);
  CHECK(slope >= 3.8);
}

TEST_CASE("solutions stay divergence-free and truncated") {
  SolverConfig c = base_config(16);
  c.initial.kind = InitialKind::random_divfree;
  c.initial.target_h1 = 1.0;
  c.damping = DampingSpec::generalized(1.0, Modifier::log1);
  c.t_end = 0.05;
  c.dt = 5e-3;
  c.ledger_stride = 1;
  const RunResult r = run(c);
  for (const LedgerRow& row : r.ledger.rows) CHECK(row.div_l2 <= 1e-10);
  CHECK(friedrichs_truncate(r.final_state.u, c.grid.truncation_radius) == r.final_state.u);
  CHECK(r.ledger.rows.size() == 11);
}

TEST_CASE("runs are deterministic") {
  SolverConfig c = base_config(16);
  c.initial.kind = InitialKind::random_divfree;
  c.damping = DampingSpec::power(1.0, 4.0);
  c.seed = 17;
  c.t_end = 0.02;
  const RunResult a = run(c);
  const RunResult b = run(c);
  CHECK(a.final_state == b.final_state);
  CHECK(a.ledger.rows == b.ledger.rows);
}

TEST_CASE("t_end = 0 gives one ledger row and no steps") {
  SolverConfig c = base_config(8);
  c.t_end = 0.0;
  const RunResult r = run(c);
  CHECK(r.steps == 0);
  CHECK(r.ledger.rows.size() == 1);
  CHECK(r.final_state == make_initial(c.initial, c.grid, c.seed));
}

TEST_CASE("initial conditions") {
  const GridSpec g = GridSpec::make(16);
  SUBCASE("random_divfree hits the H1 target") {
    InitialCondition ic;
    ic.kind = InitialKind::random_divfree;
    ic.target_h1 = 0.01;
    const MhdState s = make_initial(ic, g, 3);
    const double h1 = std::hypot(sobolev_norm(s.u, 1.0, false), sobolev_norm(s.b, 1.0, false));
    CHECK(h1 == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(l2_norm(g, divergence(s.u)) <= 1e-15);
    CHECK(make_initial(ic, g, 3) == s);
    CHECK_FALSE(make_initial(ic, g, 4) == s);
  }
  SUBCASE("Taylor-Green fields are divergence-free") {
    const MhdState s = make_initial(InitialCondition{}, g, 0);
    CHECK(l2_norm(g, divergence(s.u)) <= 1e-13);
    CHECK(l2_norm(g, divergence(s.b)) <= 1e-13);
    CHECK(l2_norm(s.u) > 0.0);
  }
  SUBCASE("single mode along e3 uses e1") {
    InitialCondition ic;
    ic.kind = InitialKind::single_mode;
    ic.wavevector = {1, 1, 0};
    const MhdState s = make_initial(ic, g, 0);
    CHECK(l2_norm(g, divergence(s.u)) <= 1e-14);
    CHECK(l2_norm(s.u) == doctest::Approx(std::sqrt(g.volume() / 2.0)));
  }
  SUBCASE("parse names") {
    for (auto k : {InitialKind::taylor_green_like, InitialKind::random_divfree, InitialKind::single_mode,
                   InitialKind::from_checkpoint})
      CHECK(parse_initial_kind(initial_kind_name(k)) == k);
    CHECK_THROWS_AS(parse_initial_kind("vortex"), InvalidArgument);
  }
}

TEST_CASE("CFL bound warns or rejects") {
  SolverConfig c = base_config(16);
  c.initial.amplitude = 100.0;
  c.dt = 0.01;
  c.t_end = 0.0;
  const RunResult r = run(c);
  CHECK(r.warnings.size() == 1);
  CHECK(r.cfl_dt_max < c.dt);
  c.strict_cfl = true;
  CHECK_THROWS_AS(run(c), InvalidArgument);
}

TEST_CASE("non-finite growth becomes BlowUp with a partial ledger") {
  SolverConfig c = base_config(16);
  c.initial.amplitude = 1e5;
  c.dt = 0.5;
  c.t_end = 1000.0;
  c.ledger_stride = 1;
  try {
    run(c);
    FAIL("expected BlowUp");
  } catch (const BlowUp& e) {
    CHECK(e.time() > 0.0);
    REQUIRE_FALSE(e.ledger().rows.empty());
    for (const LedgerRow& row : e.ledger().rows) CHECK(std::isfinite(row.l2_sq));
  }
}

TEST_CASE("checkpoint round trip and corruption") {
  SolverConfig c = base_config(8);
  c.initial.kind = InitialKind::random_divfree;
  MhdState s = make_initial(c.initial, c.grid, 9);
  s.t = 0.375;
  std::stringstream buf;
  write_checkpoint(s, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 4 + 4 + 8 + 8 + 8 + 6 * 512 * 16);
  std::stringstream in(bytes);
  CHECK(read_checkpoint(in) == s);

  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream bin(bad);
  CHECK_THROWS_AS(read_checkpoint(bin), ParseError);
  std::stringstream shortin(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_checkpoint(shortin), ParseError);
  std::stringstream longin(bytes + "x");
  CHECK_THROWS_AS(read_checkpoint(longin), ParseError);
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/dir/file.mhdf"), IoError);

  const auto path = std::filesystem::temp_directory_path() / "mhdd_test_checkpoint.mhdf";
  save_checkpoint(s, path.string());
  InitialCondition ic;
  ic.kind = InitialKind::from_checkpoint;
  ic.path = path.string();
  CHECK(make_initial(ic, c.grid, 0).u == s.u);
  CHECK_THROWS_AS(make_initial(ic, GridSpec::make(16), 0), InvalidArgument);
  std::filesystem::remove(path);
}

TEST_CASE("config validation") {
  SolverConfig c = base_config(8);
  CHECK_NOTHROW(c.validate());
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = base_config(8);
  c.t_end = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = base_config(8);
  c.ledger_stride = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}
