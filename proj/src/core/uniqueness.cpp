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

#include "mhdd/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "mhdd/spectral_ops.hpp"
#include "parallel.hpp"

namespace mhdd {
namespace {

double difference_sq(const MhdState& a, const MhdState& b) {
  const auto one = [](int, int, int) { return 1.0; };
  return weighted_energy(a.u - b.u, one) + weighted_energy(a.b - b.b, one);
}

void fit(TwinRunResult& r) {
  const std::size_t n = r.d.size();
  if (n == 0) return;
  r.d0 = r.d.front();
  r.window_end = n - 1;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (r.d[i] > r.d[i - 1] && r.d[i] >= r.d[i + 1]) {
      r.window_end = i;
      break;
    }
  }
  if (!(r.d0 > 0.0)) return;

  double sty = 0.0, stt = 0.0;
  double env = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= r.window_end; ++i) {
    const double t = r.t[i] - r.t.front();
    if (!(t > 0.0) || !(r.d[i] > 0.0)) continue;
    const double y = std::log(r.d[i] / r.d0);
    sty += t * y;
    stt += t * t;
    env = std::max(env, y / t);
  }
  if (stt == 0.0) return;
  r.c_least_squares = sty / stt;
  r.c_envelope = env;
  r.c_hat = std::max(r.c_least_squares, r.c_envelope);
  for (std::size_t i = 0; i <= r.window_end; ++i) {
    const double bound = r.d0 * std::exp(r.c_hat * (r.t[i] - r.t.front()));
    r.max_bound_excess = std::max(r.max_bound_excess, r.d[i] / bound - 1.0);
  }
}

}  // namespace

TwinRunResult twin_run(const SolverConfig& config, double epsilon, const std::optional<MhdState>& perturbation) {
  config.validate();
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("twin: epsilon must be >= 0");
  const GridSpec& g = config.grid;

  MhdState a = make_initial(config.initial, g, config.seed);
  MhdState b = a;
  if (epsilon > 0.0) {
    SpectralVectorField du, db;
    if (perturbation) {
      if (perturbation->grid().n_modes != g.n_modes)
        throw InvalidArgument("twin: perturbation has N = " + std::to_string(perturbation->grid().n_modes) +
                              " but the run uses N = " + std::to_string(g.n_modes));
      du = perturbation->u;
      db = perturbation->b;
      du.grid = db.grid = g;
      truncate_in_place(du, g.truncation_radius);
      truncate_in_place(db, g.truncation_radius);
      leray_project_in_place(du);
      leray_project_in_place(db);
    } else {
      du = random_divfree_field(g, config.seed ^ 0x9e3779b97f4a7c15ULL, 1.0);
      db = random_divfree_field(g, config.seed ^ 0xc2b2ae3d27d4eb4fULL, 1.0);
    }
    b.u.add_scaled(epsilon, du);
    b.b.add_scaled(epsilon, db);
  }

  TwinRunResult r;
  r.epsilon = epsilon;
  auto sample = [&] {
    r.t.push_back(a.t);
    r.d.push_back(difference_sq(a, b));
  };

  Integrator ia(config), ib(config);
  const double t0 = a.t;
  const long long n = step_count(t0, config.t_end, config.dt);
  sample();
  for (long long i = 0; i < n; ++i) {
    const double t_next = i + 1 == n ? config.t_end : t0 + static_cast<double>(i + 1) * config.dt;
    const double h = i + 1 == n ? config.t_end - a.t : config.dt;
    try {
      ia.step(a, h);
      ib.step(b, h);
    } catch (const NonFiniteError&) {
      r.blew_up = true;
      r.blowup_time = t_next;
      break;
    }
    a.t = b.t = t_next;
    if ((i + 1) % config.ledger_stride == 0 || i + 1 == n) sample();
  }
  fit(r);
  return r;
}

bool twin_bound_holds(const TwinRunResult& r, double rel_tol) {
  if (r.d.empty()) return true;
  if (!(r.d0 > 0.0)) {
    for (std::size_t i = 0; i <= r.window_end; ++i)
      if (r.d[i] != 0.0) return false;
    return true;
  }
  return r.max_bound_excess <= rel_tol;
}

void write_twin_csv(const TwinRunResult& r, std::ostream& out) {
  out << "t,d,bound\n";
  char buf[96];
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double bound = r.d0 * std::exp(r.c_hat * (r.t[i] - r.t.front()));
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.t[i], r.d[i], bound);
    out << buf;
  }
}

ContractionResult damping_contraction_check(const PhysicalVectorField& u, const PhysicalVectorField& s,
                                            const DampingSpec& damping) {
  if (!(u.grid == s.grid)) throw InvalidArgument("damping_contraction_check: fields on different grids");
  const GridSpec& g = u.grid;
  std::vector<double> integrand(g.size());
  detail::parallel_for(g.size(), [&](std::size_t p) {
    const std::array<double, 3> up{u.v[0][p], u.v[1][p], u.v[2][p]};
    const std::array<double, 3> sp{s.v[0][p], s.v[1][p], s.v[2][p]};
    const auto du = damping_at(damping, up);
    const auto ds = damping_at(damping, sp);
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) acc += (du[c] - ds[c]) * (up[c] - sp[c]);
    integrand[p] = acc;
  });
  ContractionResult r;
  r.integral = g.cell_volume() * detail::deterministic_sum(g.size(), [&](std::size_t p) { return integrand[p]; });
  r.min_pointwise = integrand.empty() ? 0.0 : *std::min_element(integrand.begin(), integrand.end());
  return r;
}

}  // namespace mhdd
