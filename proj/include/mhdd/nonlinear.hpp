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

#include "mhdd/damping.hpp"
#include "mhdd/fields.hpp"

namespace mhdd {

/// Split dissipation -(nu_h Delta_h + nu_v d_3^2). The isotropic unit case is
/// the plain Laplacian.
struct Viscosity {
  double horizontal = 1.0;
  double vertical = 1.0;

  void validate() const;
  bool is_unit() const { return horizontal == 1.0 && vertical == 1.0; }
  /// nu_h (kx^2 + ky^2) + nu_v kz^2
  double rate(int kx, int ky, int kz) const {
    return horizontal * (kx * kx + ky * ky) + vertical * kz * kz;
  }
  bool operator==(const Viscosity&) const = default;
};

/// Pointwise alpha |u|^(beta-1) u.
PhysicalVectorField damping_power(const PhysicalVectorField& u, double alpha, double beta);
/// Pointwise alpha f(|u|^2) |u|^2 u.
PhysicalVectorField damping_generalized(const PhysicalVectorField& u, double alpha, Modifier f);
PhysicalVectorField apply_damping(const PhysicalVectorField& u, const DampingSpec& d);

/// Dealiased v . grad w: spectral derivatives, products on the collocation
/// grid, then truncation to |k| < R of the grid.
SpectralVectorField convection(const SpectralVectorField& v, const SpectralVectorField& w);

struct Tendency {
  SpectralVectorField du;
  SpectralVectorField db;
};

/// Everything except the viscous term:
///   du = P J_R [ -(u.grad u - b.grad b) - D(u) ]
///   db = P J_R [ -(u.grad b - b.grad u) ]
/// The quadratic terms are evaluated in conservative form div(u(x)u - b(x)b)
/// and div(b(x)u - u(x)b), which equals the advective form for
/// divergence-free band-limited fields.
struct NonlinearTendency {
  Tendency tendency;
  /// <D(u), u> by collocation quadrature, the damping power drained from
  /// the kinetic energy.
  double damping_work = 0.0;
};
NonlinearTendency nonlinear_tendency(const SpectralVectorField& u, const SpectralVectorField& b,
                                     const DampingSpec& damping);

/// Full right-hand side: nonlinear_tendency plus the viscous term.
/// Throws NonFiniteError if the result is not finite.
Tendency rhs_mhd(const MhdState& state, const Viscosity& viscosity, const DampingSpec& damping);

}  // namespace mhdd
