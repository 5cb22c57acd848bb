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
#include <complex>
#include <vector>

#include "mhdd/grid.hpp"

namespace mhdd {

using Complex = std::complex<double>;
using SpectralScalar = std::vector<Complex>;
using PhysicalScalar = std::vector<double>;

/// Fourier coefficients of a vector field on the periodic box.
///
/// Normalization: f(x) = sum_k c(k) exp(i k.x), so the k = 0 coefficient of
/// a constant field equals that constant and ||f||_{L2}^2 = (2pi)^3 sum |c|^2.
struct SpectralVectorField {
  GridSpec grid;
  std::array<SpectralScalar, 3> c;

  static SpectralVectorField zeros(const GridSpec& grid);

  SpectralVectorField& operator+=(const SpectralVectorField& other);
  SpectralVectorField& operator-=(const SpectralVectorField& other);
  SpectralVectorField& operator*=(double s);
  /// this += s * other
  SpectralVectorField& add_scaled(double s, const SpectralVectorField& other);

  bool all_finite() const;
  bool operator==(const SpectralVectorField&) const = default;
};

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, SpectralVectorField a);

/// Point values of a real vector field on the collocation grid,
/// x = (2pi/N) * (i, j, l).
struct PhysicalVectorField {
  GridSpec grid;
  std::array<PhysicalScalar, 3> v;

  static PhysicalVectorField zeros(const GridSpec& grid);
  bool all_finite() const;
};

/// Spectral velocity gradient; c[i][j] holds the coefficients of d_j s_i.
struct SpectralTensor {
  GridSpec grid;
  std::array<std::array<SpectralScalar, 3>, 3> c;
};

/// w = (u, b) at time t.
struct MhdState {
  SpectralVectorField u;
  SpectralVectorField b;
  double t = 0.0;

  static MhdState zeros(const GridSpec& grid);
  const GridSpec& grid() const { return u.grid; }
  bool all_finite() const { return u.all_finite() && b.all_finite(); }
  bool operator==(const MhdState&) const = default;
};

}  // namespace mhdd
