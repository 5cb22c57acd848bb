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

#include <cmath>
#include <random>

#include "mhdd/checkpoint.hpp"
#include "mhdd/error.hpp"
#include "mhdd/integrator.hpp"
#include "mhdd/spectral_ops.hpp"

namespace mhdd {
namespace {

double h1_sq(const SpectralVectorField& s) {
  return weighted_energy(s, [](int kx, int ky, int kz) { return 1.0 + kx * kx + ky * ky + kz * kz; });
}

// Hermitian random field with |c(k)| ~ |k|^-4 on 0 < |k| < R, projected.
SpectralVectorField random_shape(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  SpectralVectorField raw = SpectralVectorField::zeros(g);
  for (auto& comp : raw.c) {
    std::size_t p = 0;
    for_each_mode(g, [&](int, int, int, int kx, int ky, int kz) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      const double k2 = static_cast<double>(kx * kx + ky * ky + kz * kz);
      comp[p] = k2 > 0.0 ? Complex(re, im) / (k2 * k2) : Complex(0.0, 0.0);
      ++p;
    });
  }
  SpectralVectorField out = SpectralVectorField::zeros(g);
  const int n = g.n_modes;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const std::size_t p = g.index(i, j, l);
          out.c[c][p] = 0.5 * (raw.c[c][p] + std::conj(raw.c[c][g.mirror_index(i, j, l)]));
        }
  truncate_in_place(out, g.truncation_radius);
  leray_project_in_place(out);
  return out;
}

// Sets the +-k coefficients of a sin(k.x) e.
void add_sine(SpectralScalar& c, const GridSpec& g, const std::array<int, 3>& k, double a) {
  auto idx = [&](int m) { return m >= 0 ? m : m + g.n_modes; };
  c[g.index(idx(k[0]), idx(k[1]), idx(k[2]))] += Complex(0.0, -0.5 * a);
  c[g.index(idx(-k[0]), idx(-k[1]), idx(-k[2]))] += Complex(0.0, 0.5 * a);
}

MhdState taylor_green(const GridSpec& g, double a) {
  PhysicalVectorField u = PhysicalVectorField::zeros(g);
  PhysicalVectorField b = PhysicalVectorField::zeros(g);
  const int n = g.n_modes;
  const double h = g.spacing();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x = i * h, y = j * h, z = l * h;
        const std::size_t p = g.index(i, j, l);
        u.v[0][p] = a * std::sin(x) * std::cos(y) * std::cos(z);
        u.v[1][p] = -a * std::cos(x) * std::sin(y) * std::cos(z);
        b.v[0][p] = a * std::cos(y);
        b.v[2][p] = a * std::sin(x);
      }
  MhdState s{forward_transform(u), forward_transform(b), 0.0};
  truncate_in_place(s.u, g.truncation_radius);
  truncate_in_place(s.b, g.truncation_radius);
  leray_project_in_place(s.u);
  leray_project_in_place(s.b);
  return s;
}

MhdState single_mode(const GridSpec& g, const std::array<int, 3>& k, double a) {
  const double k2 = static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (k2 == 0.0) throw InvalidArgument("single_mode: wavevector must be nonzero");
  if (!(std::sqrt(k2) < g.truncation_radius))
    throw InvalidArgument("single_mode: |k| must be below the truncation radius");
  // e = k x e3 normalized, or e1 when k is parallel to e3.
  std::array<double, 3> e{static_cast<double>(k[1]), static_cast<double>(-k[0]), 0.0};
  const double en = std::hypot(e[0], e[1]);
  if (en == 0.0) e = {1.0, 0.0, 0.0};
  else e = {e[0] / en, e[1] / en, 0.0};
  MhdState s = MhdState::zeros(g);
  for (int c = 0; c < 3; ++c)
    if (e[c] != 0.0) add_sine(s.u.c[c], g, k, a * e[c]);
  return s;
}

}  // namespace

std::string_view initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::taylor_green_like:
      return "taylor_green_like";
    case InitialKind::random_divfree:
      return "random_divfree";
    case InitialKind::single_mode:
      return "single_mode";
    case InitialKind::from_checkpoint:
      return "from_checkpoint";
  }
  return "?";
}

InitialKind parse_initial_kind(std::string_view name) {
  for (auto k : {InitialKind::taylor_green_like, InitialKind::random_divfree, InitialKind::single_mode,
                 InitialKind::from_checkpoint})
    if (initial_kind_name(k) == name) return k;
  throw InvalidArgument("unknown initial condition '" + std::string(name) + "'");
}

SpectralVectorField random_divfree_field(const GridSpec& grid, std::uint64_t seed, double target_h1) {
  grid.validate();
  if (!(target_h1 >= 0.0)) throw InvalidArgument("random_divfree: target norm must be >= 0");
  if (target_h1 == 0.0) return SpectralVectorField::zeros(grid);
  std::mt19937_64 rng(seed);
  SpectralVectorField s = random_shape(grid, rng);
  const double norm = std::sqrt(h1_sq(s));
  if (norm == 0.0) throw InvalidArgument("random_divfree: no admissible modes below the truncation radius");
  s *= target_h1 / norm;
  return s;
}

MhdState make_initial(const InitialCondition& ic, const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  switch (ic.kind) {
    case InitialKind::taylor_green_like:
      return taylor_green(grid, ic.amplitude);
    case InitialKind::single_mode:
      return single_mode(grid, ic.wavevector, ic.amplitude);
    case InitialKind::random_divfree: {
      if (!(ic.target_h1 >= 0.0)) throw InvalidArgument("random_divfree: target norm must be >= 0");
      MhdState s = MhdState::zeros(grid);
      if (ic.target_h1 == 0.0) return s;
      std::mt19937_64 rng(seed);
      s.u = random_shape(grid, rng);
      s.b = random_shape(grid, rng);
      const double norm = std::sqrt(h1_sq(s.u) + h1_sq(s.b));
      if (norm == 0.0) throw InvalidArgument("random_divfree: no admissible modes below the truncation radius");
      const double scale = ic.target_h1 / norm;
      s.u *= scale;
      s.b *= scale;
      return s;
    }
    case InitialKind::from_checkpoint: {
      MhdState s = load_checkpoint(ic.path);
      if (s.grid().n_modes != grid.n_modes)
        throw InvalidArgument("checkpoint '" + ic.path + "' has N = " + std::to_string(s.grid().n_modes) +
                              ", config expects " + std::to_string(grid.n_modes));
      s.u.grid = grid;
      s.b.grid = grid;
      truncate_in_place(s.u, grid.truncation_radius);
      truncate_in_place(s.b, grid.truncation_radius);
      return s;
    }
  }
  throw InvalidArgument("make_initial: unknown kind");
}

}  // namespace mhdd
