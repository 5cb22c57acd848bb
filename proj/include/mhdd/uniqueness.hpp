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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhdd/integrator.hpp"

namespace mhdd {

/// Two trajectories from (u0, b0) and (u0 + eps d, b0 + eps d'), compared at
/// the ledger rows.
struct TwinRunResult {
  double epsilon = 0.0;
  std::vector<double> t;
  std::vector<double> d;  // ||(u_A - u_B, b_A - b_B)||^2_{L2}
  double d0 = 0.0;
  /// Rate used for the bound d0 e^{C t}: the larger of the least-squares
  /// slope of log(d/d0) (intercept pinned at t = 0) and the smallest rate
  /// whose envelope covers every sample in the window.
  double c_hat = 0.0;
  double c_least_squares = 0.0;
  double c_envelope = 0.0;
  /// Fit window is rows [0, window_end]: up to the first interior local
  /// maximum of d, or the last row.
  std::size_t window_end = 0;
  /// max over the window of d / (d0 e^{c_hat t}) - 1; zero when d0 = 0.
  double max_bound_excess = 0.0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::uint64_t config_hash = 0;
};

/// Runs both trajectories in lockstep. Without an explicit perturbation,
/// d and d' are independent unit-H1 divergence-free noise fields derived
/// from config.seed. An explicit perturbation must share the grid size.
TwinRunResult twin_run(const SolverConfig& config, double epsilon,
                       const std::optional<MhdState>& perturbation = std::nullopt);

/// True when d <= d0 e^{c_hat t} (1 + rel_tol) over the fit window.
bool twin_bound_holds(const TwinRunResult& r, double rel_tol = 1e-6);

/// Columns t, d, bound with bound = d0 e^{c_hat t}.
void write_twin_csv(const TwinRunResult& r, std::ostream& out);

/// Quadrature of <D(u) - D(s), u - s> over the collocation grid, and the
/// smallest pointwise value of the integrand.
struct ContractionResult {
  double integral = 0.0;
  double min_pointwise = 0.0;
};
ContractionResult damping_contraction_check(const PhysicalVectorField& u, const PhysicalVectorField& s,
                                            const DampingSpec& damping);

}  // namespace mhdd
