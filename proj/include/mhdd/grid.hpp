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

#include <cstddef>
#include <numbers>
#include <optional>

namespace mhdd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cubic periodic box [0, 2pi)^3 sampled on N^3 collocation points.
///
/// Storage order is row-major with the x1 index slowest and x3 fastest.
/// Array index m along an axis carries the wavenumber m for m <= N/2 and
/// m - N otherwise, so wavenumbers run over {-N/2+1, ..., N/2}.
struct GridSpec {
  int n_modes = 32;
  /// Friedrichs cutoff: modes with |k| >= R are removed by every truncating
  /// operation.
  double truncation_radius = 32.0 / 3.0;
  /// Only used to derive the default radius, R = dealias_fraction * N / 2.
  double dealias_fraction = 2.0 / 3.0;

  /// Builds and validates a grid. Without an explicit radius the cutoff
  /// coincides with the dealias rule.
  static GridSpec make(int n_modes, std::optional<double> truncation_radius = std::nullopt,
                       double dealias_fraction = 2.0 / 3.0);

  /// Throws InvalidArgument unless N is even and >= 8, 0 < R <= N/2 and the
  /// dealias fraction lies in (0, 1].
  void validate() const;

  std::size_t size() const {
    const auto n = static_cast<std::size_t>(n_modes);
    return n * n * n;
  }
  std::size_t index(int i, int j, int l) const {
    const auto n = static_cast<std::size_t>(n_modes);
    return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
           static_cast<std::size_t>(l);
  }
  int wavenumber(int m) const { return m <= n_modes / 2 ? m : m - n_modes; }
  /// Wavenumber used by first derivatives: the Nyquist index has no
  /// Hermitian partner, so its odd derivative is defined as zero.
  int derivative_wavenumber(int m) const { return m == n_modes / 2 ? 0 : wavenumber(m); }
  /// Array index of -k along one axis.
  int mirror(int m) const { return m == 0 ? 0 : n_modes - m; }
  std::size_t mirror_index(int i, int j, int l) const { return index(mirror(i), mirror(j), mirror(l)); }

  double spacing() const { return kTwoPi / n_modes; }
  double volume() const { return kTwoPi * kTwoPi * kTwoPi; }
  double cell_volume() const {
    const double h = spacing();
    return h * h * h;
  }

  bool operator==(const GridSpec&) const = default;
};

/// Calls fn(i, j, l, kx, ky, kz) for every array entry in storage order.
template <class Fn>
void for_each_mode(const GridSpec& g, Fn&& fn) {
  const int n = g.n_modes;
  for (int i = 0; i < n; ++i) {
    const int kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = g.wavenumber(j);
      for (int l = 0; l < n; ++l) fn(i, j, l, kx, ky, g.wavenumber(l));
    }
  }
}

}  // namespace mhdd
