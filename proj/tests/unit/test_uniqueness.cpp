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
#include <sstream>

#include "mhdd/spectral_ops.hpp"
#include "mhdd/uniqueness.hpp"
#include "oracles.hpp"

using namespace mhdd;

namespace {

SolverConfig twin_config() {
  SolverConfig c;
  c.grid = GridSpec::make(16);
  c.damping = DampingSpec::generalized(1.0, Modifier::log1);
  c.initial.kind = InitialKind::random_divfree;
  c.initial.target_h1 = 1.0;
  c.seed = 21;
  c.dt = 2e-3;
  c.t_end = 0.2;
  c.ledger_stride = 10;
  return c;
}

PhysicalVectorField random_physical(const GridSpec& g, std::uint64_t seed, double scale) {
  SpectralVectorField s = testing::random_bandlimited_field(g, seed, g.truncation_radius);
  s *= scale;
  return inverse_transform(s);
}

}  // namespace

TEST_CASE("eps = 0 twins are identical") {
  const TwinRunResult r = twin_run(twin_config(), 0.0);
  REQUIRE(r.d.size() == 11);
  for (double d : r.d) CHECK(d == 0.0);
  CHECK(r.d0 == 0.0);
  CHECK(twin_bound_holds(r));
}

TEST_CASE("eps twin obeys the fitted exponential bound") {
  const TwinRunResult r = twin_run(twin_config(), 1e-6);
  CHECK(r.d0 > 0.0);
  CHECK(r.window_end < r.d.size());
  CHECK(r.c_hat >= r.c_least_squares);
  CHECK(r.c_hat >= r.c_envelope);
  CHECK(twin_bound_holds(r));
  CHECK_FALSE(r.blew_up);
  std::ostringstream out;
  write_twin_csv(r, out);
  CHECK(out.str().rfind("t,d,bound\n", 0) == 0);
}

TEST_CASE("the difference scales quadratically in eps") {
  const TwinRunResult a = twin_run(twin_config(), 1e-6);
  const TwinRunResult b = twin_run(twin_config(), 2e-6);
  for (std::size_t i = 0; i < a.d.size(); ++i) CHECK(b.d[i] / a.d[i] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("explicit perturbation must match the grid") {
  const MhdState p = MhdState::zeros(GridSpec::make(8));
  CHECK_THROWS_AS(twin_run(twin_config(), 1e-6, p), InvalidArgument);
  MhdState q = MhdState::zeros(GridSpec::make(16));
  q.u.c[0][q.u.grid.index(0, 0, 1)] = Complex(0.0, -0.5);
  q.u.c[0][q.u.grid.index(0, 0, 15)] = Complex(0.0, 0.5);
  const TwinRunResult r = twin_run(twin_config(), 1e-3, q);
  CHECK(r.d0 == doctest::Approx(1e-6 * q.u.grid.volume() / 2.0).epsilon(1e-12));
}

TEST_CASE("damping contraction on random field pairs") {
  const GridSpec g = GridSpec::make(16);
  for (const DampingSpec& d : {DampingSpec::generalized(1.0, Modifier::log1),
                               DampingSpec::generalized(0.1, Modifier::log3), DampingSpec::power(1.0, 4.0)}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const double scale = std::pow(10.0, static_cast<double>(s % 5) - 2.0);
      const auto u = random_physical(g, 100 + s, scale);
      const auto v = random_physical(g, 200 + s, scale);
      const ContractionResult c = damping_contraction_check(u, v, d);
      CHECK(c.integral >= -1e-10);
      CHECK(c.min_pointwise >= -1e-10);
    }
  }
  const auto u = random_physical(g, 1, 1.0);
  CHECK(damping_contraction_check(u, u, DampingSpec::generalized(1.0, Modifier::log1)).integral == 0.0);
}
