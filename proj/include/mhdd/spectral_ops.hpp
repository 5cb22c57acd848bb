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

#include <span>

#include "mhdd/fields.hpp"

namespace mhdd {

// --- transforms -----------------------------------------------------------

/// Discrete Fourier coefficients of a real field. Throws InvalidArgument on
/// NaN/Inf input.
SpectralVectorField forward_transform(const PhysicalVectorField& p);

/// Point values of a Hermitian coefficient set. Throws InvalidArgument when
/// c(-k) deviates from conj(c(k)) by more than `hermitian_tol` relative to the
/// largest coefficient.
PhysicalVectorField inverse_transform(const SpectralVectorField& s, double hermitian_tol = 1e-12);

/// max_k |c(k) - conj(c(-k))| / max_k |c(k)|; zero for the zero field.
double hermitian_defect(const GridSpec& grid, const SpectralScalar& c);

SpectralScalar forward_scalar(const GridSpec& grid, const PhysicalScalar& values);
PhysicalScalar inverse_scalar(const GridSpec& grid, const SpectralScalar& coefficients);

// Unchecked batch transforms used on hot paths. Fields are paired through one
// complex FFT. `in` and `out` have equal length; outputs are resized.
void to_physical(const GridSpec& grid, std::span<const SpectralScalar* const> in,
                 std::span<PhysicalScalar* const> out);
void to_spectral(const GridSpec& grid, std::span<const PhysicalScalar* const> in,
                 std::span<SpectralScalar* const> out);

/// Moves coefficients between grids of different size. Modes representable
/// on both grids (|k_i| < min(N_from, N_to)/2) are copied, the rest are zero.
SpectralScalar resample(const SpectralScalar& c, int n_from, int n_to);

/// Values of a band-limited field and of its gradient on an M^3 grid
/// (zero-padded evaluation when M > N).
struct PointwiseKinematics {
  GridSpec grid;  // the M-point quadrature grid
  std::array<PhysicalScalar, 3> u;
  std::array<std::array<PhysicalScalar, 3>, 3> grad;  // grad[i][j] = d_j u_i
};
PointwiseKinematics evaluate_kinematics(const SpectralVectorField& u, int quadrature_points);

// --- operators ------------------------------------------------------------

/// J_R: zero every coefficient with |k| >= radius.
SpectralVectorField friedrichs_truncate(const SpectralVectorField& s, double radius);
void truncate_in_place(SpectralVectorField& s, double radius);
void truncate_in_place(const GridSpec& grid, SpectralScalar& c, double radius);

/// Leray projector M(k) = I - k k^T / |k|^2; the mean mode passes through.
SpectralVectorField leray_project(const SpectralVectorField& s);
void leray_project_in_place(SpectralVectorField& s);

SpectralTensor gradient(const SpectralVectorField& s);
SpectralScalar divergence(const SpectralVectorField& s);

/// Multiplication by -(nu_h (k1^2 + k2^2) + nu_v k3^2). With unit coefficients
/// this is the Laplacian.
SpectralVectorField laplacian(const SpectralVectorField& s, double nu_h = 1.0, double nu_v = 1.0);

/// Sobolev norm on the torus: sqrt((2pi)^3 sum_k w(k) |c(k)|^2) with
/// w = (1 + |k|^2)^order, or |k|^(2 order) with k = 0 omitted when
/// `homogeneous`. A negative-order homogeneous norm of a field with nonzero
/// mean is rejected.
double sobolev_norm(const SpectralVectorField& s, double order, bool homogeneous);

/// Sum over components of a sobolev-type quadratic form with weight w(kx,ky,kz).
template <class Weight>
double weighted_energy(const SpectralVectorField& s, Weight&& w);

/// <f, g>_{L2} = (2pi)^3 sum_k Re(f(k) . conj(g(k)))
double inner_product(const SpectralVectorField& f, const SpectralVectorField& g);
double l2_norm(const SpectralVectorField& f);
double l2_norm(const GridSpec& grid, const SpectralScalar& c);

/// Collocation quadrature h^3 sum_x f(x) . g(x).
double quadrature_inner(const PhysicalVectorField& f, const PhysicalVectorField& g);

/// max over components and modes of |a - b|.
double max_abs_difference(const SpectralVectorField& a, const SpectralVectorField& b);
double max_abs(const SpectralVectorField& a);

}  // namespace mhdd

#include "mhdd/detail/weighted_energy.hpp"
