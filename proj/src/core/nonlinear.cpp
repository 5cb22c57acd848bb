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

#include "mhdd/nonlinear.hpp"

#include <cmath>

#include "mhdd/error.hpp"
#include "mhdd/spectral_ops.hpp"
#include "parallel.hpp"

namespace mhdd {
namespace {

constexpr Complex kI{0.0, 1.0};

PhysicalVectorField pointwise_damping(const PhysicalVectorField& u, const DampingSpec& d) {
  PhysicalVectorField out = PhysicalVectorField::zeros(u.grid);
  if (!d.active()) return out;
  detail::parallel_for(u.grid.size(), [&](std::size_t p) {
    const auto v = damping_at(d, {u.v[0][p], u.v[1][p], u.v[2][p]});
    for (int c = 0; c < 3; ++c) out.v[c][p] = v[c];
  });
  return out;
}

// out_i = sum_j i k_j flux[i][j], followed by J_R and Leray projection.
template <class FluxAt>
SpectralVectorField divergence_of_flux(const GridSpec& g, FluxAt&& flux_at) {
  SpectralVectorField out = SpectralVectorField::zeros(g);
  const int n = g.n_modes;
  const double r2 = g.truncation_radius * g.truncation_radius;
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const int kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = g.wavenumber(j);
      for (int l = 0; l < n; ++l) {
        const int kz = g.wavenumber(l);
        if (static_cast<double>(kx * kx + ky * ky + kz * kz) >= r2) continue;
        const double k[3] = {static_cast<double>(g.derivative_wavenumber(i)),
                             static_cast<double>(g.derivative_wavenumber(j)),
                             static_cast<double>(g.derivative_wavenumber(l))};
        const std::size_t p = g.index(i, j, l);
        for (int c = 0; c < 3; ++c) {
          Complex acc(0.0, 0.0);
          for (int d = 0; d < 3; ++d) acc += k[d] * flux_at(c, d, p);
          out.c[c][p] = kI * acc;
        }
      }
    }
  });
  return out;
}

}  // namespace

void Viscosity::validate() const {
  if (!(horizontal > 0.0) || !(vertical > 0.0))
    throw InvalidArgument("viscosity: horizontal and vertical coefficients must be > 0");
}

PhysicalVectorField damping_power(const PhysicalVectorField& u, double alpha, double beta) {
  if (!(beta > 1.0)) throw InvalidArgument("damping_power: beta must be > 1");
  return pointwise_damping(u, DampingSpec::power(alpha, beta));
}

PhysicalVectorField damping_generalized(const PhysicalVectorField& u, double alpha, Modifier f) {
  return pointwise_damping(u, DampingSpec::generalized(alpha, f));
}

PhysicalVectorField apply_damping(const PhysicalVectorField& u, const DampingSpec& d) {
  return pointwise_damping(u, d);
}

SpectralVectorField convection(const SpectralVectorField& v, const SpectralVectorField& w) {
  if (v.grid.n_modes != w.grid.n_modes) throw InvalidArgument("convection: mismatched grids");
  const GridSpec& g = v.grid;
  const SpectralTensor grad = gradient(w);

  std::array<PhysicalScalar, 3> vp;
  std::array<std::array<PhysicalScalar, 3>, 3> gp;
  std::vector<const SpectralScalar*> in = {&v.c[0], &v.c[1], &v.c[2]};
  std::vector<PhysicalScalar*> out = {&vp[0], &vp[1], &vp[2]};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      in.push_back(&grad.c[i][j]);
      out.push_back(&gp[i][j]);
    }
  to_physical(g, in, out);

  std::array<PhysicalScalar, 3> prod;
  for (auto& p : prod) p.resize(g.size());
  detail::parallel_for(g.size(), [&](std::size_t p) {
    for (int i = 0; i < 3; ++i)
      prod[i][p] = vp[0][p] * gp[i][0][p] + vp[1][p] * gp[i][1][p] + vp[2][p] * gp[i][2][p];
  });

  SpectralVectorField result{g, {}};
  const PhysicalScalar* pin[] = {&prod[0], &prod[1], &prod[2]};
  SpectralScalar* pout[] = {&result.c[0], &result.c[1], &result.c[2]};
  to_spectral(g, pin, pout);
  truncate_in_place(result, g.truncation_radius);
  return result;
}

NonlinearTendency nonlinear_tendency(const SpectralVectorField& u, const SpectralVectorField& b,
                                     const DampingSpec& damping) {
  if (u.grid.n_modes != b.grid.n_modes) throw InvalidArgument("nonlinear_tendency: mismatched grids");
  const GridSpec& g = u.grid;
  const std::size_t size = g.size();

  std::array<PhysicalScalar, 3> up, bp;
  {
    const SpectralScalar* in[] = {&u.c[0], &u.c[1], &u.c[2], &b.c[0], &b.c[1], &b.c[2]};
    PhysicalScalar* out[] = {&up[0], &up[1], &up[2], &bp[0], &bp[1], &bp[2]};
    to_physical(g, in, out);
  }

  // Symmetric momentum flux u_i u_j - b_i b_j, antisymmetric induction flux
  // u_j b_i - b_j u_i, and the damping field.
  constexpr int kSym[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  constexpr int kAnti[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const bool damped = damping.active();
  const int nfields = damped ? 12 : 9;
  std::vector<PhysicalScalar> phys(static_cast<std::size_t>(nfields), PhysicalScalar(size));
  detail::parallel_for(size, [&](std::size_t p) {
    for (int s = 0; s < 6; ++s) {
      const int i = kSym[s][0], j = kSym[s][1];
      phys[s][p] = up[i][p] * up[j][p] - bp[i][p] * bp[j][p];
    }
    for (int a = 0; a < 3; ++a) {
      const int i = kAnti[a][0], j = kAnti[a][1];
      phys[6 + a][p] = up[j][p] * bp[i][p] - bp[j][p] * up[i][p];
    }
    if (damped) {
      const auto d = damping_at(damping, {up[0][p], up[1][p], up[2][p]});
      for (int c = 0; c < 3; ++c) phys[9 + c][p] = d[c];
    }
  });

  double work = 0.0;
  if (damped) {
    work = g.cell_volume() * detail::deterministic_sum(size, [&](std::size_t p) {
             return phys[9][p] * up[0][p] + phys[10][p] * up[1][p] + phys[11][p] * up[2][p];
           });
  }

  std::vector<SpectralScalar> spec(static_cast<std::size_t>(nfields));
  {
    std::vector<const PhysicalScalar*> in;
    std::vector<SpectralScalar*> out;
    for (int f = 0; f < nfields; ++f) {
      in.push_back(&phys[f]);
      out.push_back(&spec[f]);
    }
    to_spectral(g, in, out);
  }

  constexpr int kSymIndex[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  SpectralVectorField du = divergence_of_flux(g, [&](int i, int j, std::size_t p) {
    return spec[kSymIndex[i][j]][p];
  });
  // T_ij = u_j b_i - b_j u_i with T_ji = -T_ij
  SpectralVectorField db = divergence_of_flux(g, [&](int i, int j, std::size_t p) -> Complex {
    if (i == j) return Complex(0.0, 0.0);
    if (i < j) return spec[6 + (i == 0 ? j - 1 : 2)][p];
    return -spec[6 + (j == 0 ? i - 1 : 2)][p];
  });

  for (int c = 0; c < 3; ++c) {
    auto& duc = du.c[c];
    auto& dbc = db.c[c];
    for (std::size_t p = 0; p < size; ++p) {
      duc[p] = -duc[p];
      dbc[p] = -dbc[p];
    }
  }
  if (damped) {
    for (int c = 0; c < 3; ++c) {
      SpectralScalar d = spec[9 + c];
      truncate_in_place(g, d, g.truncation_radius);
      for (std::size_t p = 0; p < size; ++p) du.c[c][p] -= d[p];
    }
  }
  leray_project_in_place(du);
  leray_project_in_place(db);
  return {{std::move(du), std::move(db)}, work};
}

Tendency rhs_mhd(const MhdState& state, const Viscosity& viscosity, const DampingSpec& damping) {
  NonlinearTendency nl = nonlinear_tendency(state.u, state.b, damping);
  nl.tendency.du += laplacian(state.u, viscosity.horizontal, viscosity.vertical);
  nl.tendency.db += laplacian(state.b, viscosity.horizontal, viscosity.vertical);
  if (!nl.tendency.du.all_finite() || !nl.tendency.db.all_finite())
    throw NonFiniteError("rhs_mhd: non-finite tendency at t = " + std::to_string(state.t));
  return std::move(nl.tendency);
}

}  // namespace mhdd
