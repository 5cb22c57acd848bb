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

#include "mhdd/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhdd/spectral_ops.hpp"
#include "parallel.hpp"

namespace mhdd {

void SolverConfig::validate() const {
  grid.validate();
  viscosity.validate();
  damping.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time.dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("time.t_end must be >= 0");
  if (ledger_stride < 1) throw InvalidArgument("time.ledger_stride must be >= 1");
  if (!(cfl_target > 0.0)) throw InvalidArgument("time.cfl_target must be > 0");
  if (quadrature_points != 0 && (quadrature_points < 8 || quadrature_points % 2 != 0))
    throw InvalidArgument("checks.quadrature_points must be 0 or an even number >= 8");
}

double cfl_dt_limit(const MhdState& state, double cfl_target) {
  const PhysicalVectorField u = inverse_transform(state.u, 1e-8);
  const PhysicalVectorField b = inverse_transform(state.b, 1e-8);
  auto max_speed = [](const PhysicalVectorField& f) {
    double m = 0.0;
    for (std::size_t p = 0; p < f.grid.size(); ++p)
      m = std::max(m, std::sqrt(f.v[0][p] * f.v[0][p] + f.v[1][p] * f.v[1][p] + f.v[2][p] * f.v[2][p]));
    return m;
  };
  const double speed = (max_speed(u) + max_speed(b)) * state.grid().truncation_radius;
  return speed > 0.0 ? cfl_target / speed : std::numeric_limits<double>::infinity();
}

Integrator::Integrator(const SolverConfig& config)
    : grid_(config.grid), viscosity_(config.viscosity), damping_(config.damping) {}

void Integrator::ensure_factors(double h) {
  if (h == factor_h_) return;
  full_.resize(grid_.size());
  half_.resize(grid_.size());
  std::size_t p = 0;
  for_each_mode(grid_, [&](int, int, int, int kx, int ky, int kz) {
    const double rate = viscosity_.rate(kx, ky, kz);
    full_[p] = std::exp(-rate * h);
    half_[p] = std::exp(-rate * 0.5 * h);
    ++p;
  });
  factor_h_ = h;
}

void Integrator::multiply(SpectralVectorField& s, const std::vector<double>& factor) const {
  for (auto& comp : s.c) {
    Complex* c = comp.data();
    const double* f = factor.data();
    detail::parallel_for(comp.size(), [&](std::size_t p) { c[p] *= f[p]; });
  }
}

double Integrator::stage(const SpectralVectorField& u, const SpectralVectorField& b, Tendency& out) const {
  NonlinearTendency nl = nonlinear_tendency(u, b, damping_);
  out = std::move(nl.tendency);
  const auto rate = [&](int kx, int ky, int kz) { return viscosity_.rate(kx, ky, kz); };
  const double visc = weighted_energy(u, rate) + weighted_energy(b, rate);
  return 2.0 * visc + 2.0 * nl.damping_work;
}

double Integrator::step(MhdState& s, double h) {
  ensure_factors(h);
  Tendency k1, k2, k3, k4;

  const double q1 = stage(s.u, s.b, k1);

  SpectralVectorField su = s.u, sb = s.b;
  su.add_scaled(0.5 * h, k1.du);
  sb.add_scaled(0.5 * h, k1.db);
  multiply(su, half_);
  multiply(sb, half_);
  const double q2 = stage(su, sb, k2);

  SpectralVectorField eu = s.u, eb = s.b;  // E(h/2) w
  multiply(eu, half_);
  multiply(eb, half_);
  su = eu;
  sb = eb;
  su.add_scaled(0.5 * h, k2.du);
  sb.add_scaled(0.5 * h, k2.db);
  const double q3 = stage(su, sb, k3);

  // E(h) w = E(h/2) E(h/2) w; k3 goes through E(h/2) before use.
  multiply(eu, half_);
  multiply(eb, half_);
  multiply(k3.du, half_);
  multiply(k3.db, half_);
  su = eu;
  sb = eb;
  su.add_scaled(h, k3.du);
  sb.add_scaled(h, k3.db);
  const double q4 = stage(su, sb, k4);

  // w+ = E(h) w + h/6 (E(h) k1 + 2 E(h/2) k2 + 2 E(h/2) k3 + k4); k3 already carries E(h/2).
  multiply(k1.du, full_);
  multiply(k1.db, full_);
  multiply(k2.du, half_);
  multiply(k2.db, half_);
  const double w6 = h / 6.0;
  s.u = std::move(eu);
  s.b = std::move(eb);
  s.u.add_scaled(w6, k1.du).add_scaled(2.0 * w6, k2.du).add_scaled(2.0 * w6, k3.du).add_scaled(w6, k4.du);
  s.b.add_scaled(w6, k1.db).add_scaled(2.0 * w6, k2.db).add_scaled(2.0 * w6, k3.db).add_scaled(w6, k4.db);
  leray_project_in_place(s.u);
  leray_project_in_place(s.b);
  truncate_in_place(s.u, grid_.truncation_radius);
  truncate_in_place(s.b, grid_.truncation_radius);
  s.t += h;
  if (!s.all_finite()) throw NonFiniteError("non-finite state at t = " + std::to_string(s.t));
  return w6 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
}

long long step_count(double t0, double t_end, double dt) {
  if (!(t_end > t0)) return 0;
  const auto n = static_cast<long long>(std::ceil((t_end - t0) / dt - 1e-9));
  return n < 1 ? 1 : n;
}

MhdState step(const MhdState& state, const SolverConfig& config) {
  config.validate();
  Integrator integrator(config);
  MhdState out = state;
  integrator.step(out, config.dt);
  return out;
}

RunResult run(const SolverConfig& config, MhdState initial, const RowObserver& observer) {
  config.validate();
  if (!(initial.grid() == config.grid) || !(initial.b.grid == config.grid))
    throw InvalidArgument("run: initial state grid does not match the configuration");
  if (!initial.all_finite()) throw NonFiniteError("run: initial state is not finite");

  RunResult result;
  result.ledger.damping = config.damping;
  result.ledger.viscosity = config.viscosity;
  result.cfl_dt_max = cfl_dt_limit(initial, config.cfl_target);
  if (config.dt > result.cfl_dt_max) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "dt = " << config.dt << " exceeds the CFL bound " << result.cfl_dt_max << " (target "
        << config.cfl_target << ")";
    if (config.strict_cfl) throw InvalidArgument(msg.str());
    result.warnings.push_back(msg.str());
  }

  const double t0 = initial.t;
  const long long n = step_count(t0, config.t_end, config.dt);

  MhdState state = std::move(initial);
  auto record = [&](long long step_index, double drained) {
    LedgerRow row = ledger_row(state, config.damping, config.viscosity, config.quadrature_points);
    row.step = step_index;
    row.energy_rk4 = drained;
    result.ledger.append(row);
    if (observer) observer(state, result.ledger.rows.back());
  };

  Integrator integrator(config);
  double drained = 0.0;
  record(0, 0.0);
  for (long long i = 0; i < n; ++i) {
    const double t_next = i + 1 == n ? config.t_end : t0 + static_cast<double>(i + 1) * config.dt;
    const double h = i + 1 == n ? config.t_end - state.t : config.dt;
    try {
      drained += integrator.step(state, h);
    } catch (const NonFiniteError&) {
      throw BlowUp(state.t, std::move(result.ledger),
                   "blow-up: non-finite state in the step from t = " + std::to_string(state.t - h));
    }
    state.t = t_next;
    if ((i + 1) % config.ledger_stride == 0 || i + 1 == n) record(i + 1, drained);
  }
  result.steps = n;
  result.final_state = std::move(state);
  return result;
}

RunResult run(const SolverConfig& config, const RowObserver& observer) {
  config.validate();
  return run(config, make_initial(config.initial, config.grid, config.seed), observer);
}

}  // namespace mhdd
