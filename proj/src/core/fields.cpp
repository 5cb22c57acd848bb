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

#include "mhdd/fields.hpp"

#include <cmath>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (a.n_modes != b.n_modes) throw InvalidArgument("field arithmetic on mismatched grids");
}

}  // namespace

SpectralVectorField SpectralVectorField::zeros(const GridSpec& grid) {
  SpectralVectorField f{grid, {}};
  for (auto& comp : f.c) comp.assign(grid.size(), Complex(0.0, 0.0));
  return f;
}

SpectralVectorField& SpectralVectorField::operator+=(const SpectralVectorField& other) {
  return add_scaled(1.0, other);
}

SpectralVectorField& SpectralVectorField::operator-=(const SpectralVectorField& other) {
  return add_scaled(-1.0, other);
}

SpectralVectorField& SpectralVectorField::operator*=(double s) {
  for (auto& comp : c)
    for (auto& z : comp) z *= s;
  return *this;
}

SpectralVectorField& SpectralVectorField::add_scaled(double s, const SpectralVectorField& other) {
  require_same_grid(grid, other.grid);
  for (int d = 0; d < 3; ++d) {
    auto& dst = c[d];
    const auto& src = other.c[d];
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += s * src[p];
  }
  return *this;
}

bool SpectralVectorField::all_finite() const {
  for (const auto& comp : c)
    for (const auto& z : comp)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) { return a += b; }
SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) { return a -= b; }
SpectralVectorField operator*(double s, SpectralVectorField a) { return a *= s; }

PhysicalVectorField PhysicalVectorField::zeros(const GridSpec& grid) {
  PhysicalVectorField f{grid, {}};
  for (auto& comp : f.v) comp.assign(grid.size(), 0.0);
  return f;
}

bool PhysicalVectorField::all_finite() const {
  for (const auto& comp : v)
    for (double x : comp)
      if (!std::isfinite(x)) return false;
  return true;
}

MhdState MhdState::zeros(const GridSpec& grid) {
  return MhdState{SpectralVectorField::zeros(grid), SpectralVectorField::zeros(grid), 0.0};
}

}  // namespace mhdd
