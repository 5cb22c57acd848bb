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
#include <functional>
#include <string>
#include <vector>

#include "mhdd/damping.hpp"
#include "mhdd/energy.hpp"
#include "mhdd/error.hpp"
#include "mhdd/fields.hpp"
#include "mhdd/nonlinear.hpp"

namespace mhdd {

enum class InitialKind { taylor_green_like, random_divfree, single_mode, from_checkpoint };

std::string_view initial_kind_name(InitialKind k);
InitialKind parse_initial_kind(std::string_view name);

struct InitialCondition {
  InitialKind kind = InitialKind::taylor_green_like;
  double target_h1 = 0.01;              // random_divfree: ||(u0, b0)||_{H1}
  std::array<int, 3> wavevector{0, 0, 1};  // single_mode
  double amplitude = 1.0;               // single_mode and taylor_green_like
  std::string path;                     // from_checkpoint

  bool operator==(const InitialCondition&) const = default;
};

struct SolverConfig {
  GridSpec grid;
  Viscosity viscosity;
  DampingSpec damping;
  double dt = 1e-3;
  double t_end = 1.0;
  long long ledger_stride = 10;
  std::uint64_t seed = 0;
  InitialCondition initial;
  /// dt must not exceed cfl_target / ((|u|_inf + |b|_inf) k_max) at t = 0.
  double cfl_target = 0.5;
  /// Reject a dt above the CFL bound instead of warning.
  bool strict_cfl = false;
  /// Quadrature grid of the damping ledger columns; <= 0 means N.
  int quadrature_points = 0;

  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

/// Builds a divergence-free initial state truncated to |k| < R.
///   taylor_green_like: u = a (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0),
///                      b = a (cos x2, 0, sin x1)
///   random_divfree:    random phases, amplitude |k|^-4, scaled jointly so that
///                      ||(u, b)||_{H1} equals target_h1
///   single_mode:       u = a sin(k.x) e with e orthogonal to k, b = 0
///   from_checkpoint:   read from file; N must match the grid
MhdState make_initial(const InitialCondition& ic, const GridSpec& grid, std::uint64_t seed);

/// One random divergence-free field with ||s||_{H1} = target_h1 (zero for 0).
SpectralVectorField random_divfree_field(const GridSpec& grid, std::uint64_t seed, double target_h1);

/// cfl_target / ((|u|_inf + |b|_inf) R); infinity for the zero state.
double cfl_dt_limit(const MhdState& state, double cfl_target);

/// Non-finite state during a run. Carries the time of the failed step and
/// the ledger up to the last finite row.
class BlowUp : public Error {
 public:
  BlowUp(double time, EnergyLedger partial, const std::string& what)
      : Error(what), time_(time), ledger_(std::move(partial)) {}
  double time() const { return time_; }
  const EnergyLedger& ledger() const { return ledger_; }

 private:
  double time_;
  EnergyLedger ledger_;
};

/// Integrating-factor (Lawson) RK4 with the viscous multiplier
/// E(tau) = exp(-nu(k) tau) applied exactly:
///   k1 = N(w)
///   k2 = N(E(h/2)(w + h/2 k1))
///   k3 = N(E(h/2) w + h/2 k2)
///   k4 = N(E(h) w + h E(h/2) k3)
///   w+ = E(h) w + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
/// followed by Leray projection and truncation.
class Integrator {
 public:
  explicit Integrator(const SolverConfig& config);

  /// Advances `state` by h in place and returns the energy drained over the
  /// step, h/6 (q1 + 2 q2 + 2 q3 + q4) with q = 2 visc + 2 <D(u), u> at the
  /// stage states. Throws NonFiniteError if the result is not finite.
  double step(MhdState& state, double h);

 private:
  void ensure_factors(double h);
  void multiply(SpectralVectorField& s, const std::vector<double>& factor) const;
  double stage(const SpectralVectorField& u, const SpectralVectorField& b, Tendency& out) const;

  GridSpec grid_;
  Viscosity viscosity_;
  DampingSpec damping_;
  double factor_h_ = -1.0;
  std::vector<double> full_, half_;  // E(h), E(h/2) per mode
};

/// Steps from t0 to t_end with nominal dt; the last one is shortened.
long long step_count(double t0, double t_end, double dt);

/// One step of size config.dt.
MhdState step(const MhdState& state, const SolverConfig& config);

struct RunResult {
  MhdState final_state;
  EnergyLedger ledger;
  long long steps = 0;
  double cfl_dt_max = 0.0;
  std::vector<std::string> warnings;
};

/// Called after each sampled ledger row with the state at that row.
using RowObserver = std::function<void(const MhdState&, const LedgerRow&)>;

/// Integrates from `initial` to config.t_end with steps of config.dt (the
/// last one shortened to land on t_end). Ledger rows are taken at the start,
/// every ledger_stride steps and at the end. Throws BlowUp on non-finite data.
RunResult run(const SolverConfig& config, MhdState initial, const RowObserver& observer = {});
/// Same, starting from make_initial(config.initial, config.grid, config.seed).
RunResult run(const SolverConfig& config, const RowObserver& observer = {});

}  // namespace mhdd
