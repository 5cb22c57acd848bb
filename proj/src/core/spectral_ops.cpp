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

#include "mhdd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mhdd/error.hpp"
#include "mhdd/fft.hpp"
#include "parallel.hpp"

namespace mhdd {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": mismatched field sizes");
}

}  // namespace

// --- transforms -----------------------------------------------------------

void to_physical(const GridSpec& grid, std::span<const SpectralScalar* const> in,
                 std::span<PhysicalScalar* const> out) {
  require_same_size(in.size(), out.size(), "to_physical");
  FftEngine& fft = fft_engine(grid.n_modes);
  for (auto* o : out) o->resize(grid.size());
  std::size_t f = 0;
  for (; f + 1 < in.size(); f += 2) fft.inverse_pair(*in[f], *in[f + 1], *out[f], *out[f + 1]);
  if (f < in.size()) fft.inverse_pair(*in[f], {}, *out[f], {});
}

void to_spectral(const GridSpec& grid, std::span<const PhysicalScalar* const> in,
                 std::span<SpectralScalar* const> out) {
  require_same_size(in.size(), out.size(), "to_spectral");
  FftEngine& fft = fft_engine(grid.n_modes);
  for (auto* o : out) o->resize(grid.size());
  std::size_t f = 0;
  for (; f + 1 < in.size(); f += 2) fft.forward_pair(*in[f], *in[f + 1], *out[f], *out[f + 1]);
  if (f < in.size()) fft.forward_pair(*in[f], {}, *out[f], {});
}

SpectralScalar forward_scalar(const GridSpec& grid, const PhysicalScalar& values) {
  SpectralScalar out;
  const PhysicalScalar* in[] = {&values};
  SpectralScalar* o[] = {&out};
  to_spectral(grid, in, o);
  return out;
}

PhysicalScalar inverse_scalar(const GridSpec& grid, const SpectralScalar& coefficients) {
  PhysicalScalar out;
  const SpectralScalar* in[] = {&coefficients};
  PhysicalScalar* o[] = {&out};
  to_physical(grid, in, o);
  return out;
}

double hermitian_defect(const GridSpec& g, const SpectralScalar& c) {
  double defect = 0.0;
  double scale = 0.0;
  const int n = g.n_modes;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const Complex z = c[g.index(i, j, l)];
        scale = std::max(scale, std::abs(z));
        defect = std::max(defect, std::abs(z - std::conj(c[g.mirror_index(i, j, l)])));
      }
  return scale > 0.0 ? defect / scale : 0.0;
}

SpectralVectorField forward_transform(const PhysicalVectorField& p) {
  if (!p.all_finite()) throw InvalidArgument("forward_transform: non-finite input values");
  SpectralVectorField s{p.grid, {}};
  const PhysicalScalar* in[] = {&p.v[0], &p.v[1], &p.v[2]};
  SpectralScalar* out[] = {&s.c[0], &s.c[1], &s.c[2]};
  to_spectral(p.grid, in, out);
  return s;
}

PhysicalVectorField inverse_transform(const SpectralVectorField& s, double hermitian_tol) {
  for (int d = 0; d < 3; ++d) {
    const double defect = hermitian_defect(s.grid, s.c[d]);
    if (!(defect <= hermitian_tol)) {
      std::ostringstream msg;
      msg << "inverse_transform: component " << d << " breaks Hermitian symmetry (relative defect "
          << defect << " > " << hermitian_tol << ")";
      throw InvalidArgument(msg.str());
    }
  }
  PhysicalVectorField p{s.grid, {}};
  const SpectralScalar* in[] = {&s.c[0], &s.c[1], &s.c[2]};
  PhysicalScalar* out[] = {&p.v[0], &p.v[1], &p.v[2]};
  to_physical(s.grid, in, out);
  return p;
}

SpectralScalar resample(const SpectralScalar& c, int n_from, int n_to) {
  const GridSpec from{n_from, n_from / 2.0, 1.0};
  const GridSpec to{n_to, n_to / 2.0, 1.0};
  SpectralScalar out(to.size(), Complex(0.0, 0.0));
  const int kmax = std::min(n_from, n_to) / 2;  // keep |k_i| < kmax
  for_each_mode(from, [&](int i, int j, int l, int kx, int ky, int kz) {
    if (std::abs(kx) >= kmax || std::abs(ky) >= kmax || std::abs(kz) >= kmax) return;
    const auto wrap = [n_to](int k) { return k < 0 ? k + n_to : k; };
    out[to.index(wrap(kx), wrap(ky), wrap(kz))] = c[from.index(i, j, l)];
  });
  return out;
}

PointwiseKinematics evaluate_kinematics(const SpectralVectorField& u, int quadrature_points) {
  const int m = quadrature_points > 0 ? quadrature_points : u.grid.n_modes;
  PointwiseKinematics out;
  out.grid = GridSpec{m, m / 2.0, 1.0};

  const SpectralTensor g = gradient(u);
  std::vector<SpectralScalar> spectral;
  spectral.reserve(12);
  for (int i = 0; i < 3; ++i) spectral.push_back(resample(u.c[i], u.grid.n_modes, m));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) spectral.push_back(resample(g.c[i][j], u.grid.n_modes, m));

  std::vector<const SpectralScalar*> in;
  std::vector<PhysicalScalar*> dst;
  for (auto& s : spectral) in.push_back(&s);
  for (int i = 0; i < 3; ++i) dst.push_back(&out.u[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dst.push_back(&out.grad[i][j]);
  to_physical(out.grid, in, dst);
  return out;
}

// --- operators ------------------------------------------------------------

void truncate_in_place(const GridSpec& g, SpectralScalar& c, double radius) {
  const double r2 = radius * radius;
  std::size_t p = 0;
  for_each_mode(g, [&](int, int, int, int kx, int ky, int kz) {
    if (static_cast<double>(kx * kx + ky * ky + kz * kz) >= r2) c[p] = Complex(0.0, 0.0);
    ++p;
  });
}

void truncate_in_place(SpectralVectorField& s, double radius) {
  for (auto& comp : s.c) truncate_in_place(s.grid, comp, radius);
}

SpectralVectorField friedrichs_truncate(const SpectralVectorField& s, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("friedrichs_truncate: radius must be positive");
  SpectralVectorField out = s;
  truncate_in_place(out, radius);
  return out;
}

void leray_project_in_place(SpectralVectorField& s) {
  const GridSpec& g = s.grid;
  const int n = g.n_modes;
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const double kx = g.derivative_wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.derivative_wavenumber(j);
      for (int l = 0; l < n; ++l) {
        const double kz = g.derivative_wavenumber(l);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;
        const std::size_t p = g.index(i, j, l);
        const Complex kdot = kx * s.c[0][p] + ky * s.c[1][p] + kz * s.c[2][p];
        const Complex f = kdot / k2;
        s.c[0][p] -= kx * f;
        s.c[1][p] -= ky * f;
        s.c[2][p] -= kz * f;
      }
    }
  });
}

SpectralVectorField leray_project(const SpectralVectorField& s) {
  SpectralVectorField out = s;
  leray_project_in_place(out);
  return out;
}

SpectralTensor gradient(const SpectralVectorField& s) {
  const GridSpec& g = s.grid;
  SpectralTensor t{g, {}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.c[i][j].resize(g.size());
  const int n = g.n_modes;
  for (int a = 0; a < n; ++a) {
    const double k0 = g.derivative_wavenumber(a);
    for (int b = 0; b < n; ++b) {
      const double k1 = g.derivative_wavenumber(b);
      for (int c = 0; c < n; ++c) {
        const double k[3] = {k0, k1, static_cast<double>(g.derivative_wavenumber(c))};
        const std::size_t p = g.index(a, b, c);
        for (int i = 0; i < 3; ++i) {
          const Complex z = kI * s.c[i][p];
          for (int j = 0; j < 3; ++j) t.c[i][j][p] = k[j] * z;
        }
      }
    }
  }
  return t;
}

SpectralScalar divergence(const SpectralVectorField& s) {
  const GridSpec& g = s.grid;
  SpectralScalar out(g.size());
  const int n = g.n_modes;
  for (int a = 0; a < n; ++a) {
    const double kx = g.derivative_wavenumber(a);
    for (int b = 0; b < n; ++b) {
      const double ky = g.derivative_wavenumber(b);
      for (int c = 0; c < n; ++c) {
        const double kz = g.derivative_wavenumber(c);
        const std::size_t p = g.index(a, b, c);
        out[p] = kI * (kx * s.c[0][p] + ky * s.c[1][p] + kz * s.c[2][p]);
      }
    }
  }
  return out;
}

SpectralVectorField laplacian(const SpectralVectorField& s, double nu_h, double nu_v) {
  SpectralVectorField out = s;
  std::size_t p = 0;
  for_each_mode(s.grid, [&](int, int, int, int kx, int ky, int kz) {
    const double factor = -(nu_h * (kx * kx + ky * ky) + nu_v * kz * kz);
    for (auto& comp : out.c) comp[p] *= factor;
    ++p;
  });
  return out;
}

double sobolev_norm(const SpectralVectorField& s, double order, bool homogeneous) {
  if (homogeneous && order < 0.0) {
    for (const auto& comp : s.c)
      if (comp[0] != Complex(0.0, 0.0))
        throw InvalidArgument("sobolev_norm: negative-order homogeneous norm of a field with nonzero mean");
  }
  const double e2 = weighted_energy(s, [&](int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx * kx + ky * ky + kz * kz);
    if (homogeneous) return k2 == 0.0 ? 0.0 : std::pow(k2, order);
    return std::pow(1.0 + k2, order);
  });
  return std::sqrt(e2);
}

double inner_product(const SpectralVectorField& f, const SpectralVectorField& g) {
  require_same_size(f.grid.size(), g.grid.size(), "inner_product");
  double total = 0.0;
  for (int d = 0; d < 3; ++d) {
    const auto& a = f.c[d];
    const auto& b = g.c[d];
    total += detail::deterministic_sum(a.size(), [&](std::size_t p) {
      return a[p].real() * b[p].real() + a[p].imag() * b[p].imag();
    });
  }
  return f.grid.volume() * total;
}

double l2_norm(const SpectralVectorField& f) { return std::sqrt(inner_product(f, f)); }

double l2_norm(const GridSpec& grid, const SpectralScalar& c) {
  const double s = detail::deterministic_sum(c.size(), [&](std::size_t p) { return std::norm(c[p]); });
  return std::sqrt(grid.volume() * s);
}

double quadrature_inner(const PhysicalVectorField& f, const PhysicalVectorField& g) {
  require_same_size(f.grid.size(), g.grid.size(), "quadrature_inner");
  double total = 0.0;
  for (int d = 0; d < 3; ++d) {
    const auto& a = f.v[d];
    const auto& b = g.v[d];
    total += detail::deterministic_sum(a.size(), [&](std::size_t p) { return a[p] * b[p]; });
  }
  return f.grid.cell_volume() * total;
}

double max_abs_difference(const SpectralVectorField& a, const SpectralVectorField& b) {
  require_same_size(a.grid.size(), b.grid.size(), "max_abs_difference");
  double m = 0.0;
  for (int d = 0; d < 3; ++d)
    for (std::size_t p = 0; p < a.c[d].size(); ++p) m = std::max(m, std::abs(a.c[d][p] - b.c[d][p]));
  return m;
}

double max_abs(const SpectralVectorField& a) {
  double m = 0.0;
  for (const auto& comp : a.c)
    for (const auto& z : comp) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace mhdd
