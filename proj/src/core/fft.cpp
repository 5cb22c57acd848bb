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

#include "mhdd/fft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::atomic<int> g_threads{1};

void ensure_fftw_threads() {
  static bool initialised = false;
  if (!initialised) {
    fftw_init_threads();
    initialised = true;
  }
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftEngine::FftEngine(int n_modes) : n_(n_modes) {
  if (n_modes <= 0) throw InvalidArgument("fft: grid size must be positive");
  const auto n = static_cast<std::size_t>(n_modes);
  size_ = n * n * n;
  std::lock_guard lock(planner_mutex());
  ensure_fftw_threads();
  fftw_plan_with_nthreads(g_threads.load());
  buffer_ = reinterpret_cast<Complex*>(fftw_alloc_complex(size_));
  if (buffer_ == nullptr) throw Error("fft: allocation failed");
  // FFTW_ESTIMATE keeps plan selection independent of timing, which the
  // bit-reproducibility of runs relies on.
  forward_plan_ = fftw_plan_dft_3d(n_, n_, n_, as_fftw(buffer_), as_fftw(buffer_),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_3d(n_, n_, n_, as_fftw(buffer_), as_fftw(buffer_),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    fftw_free(buffer_);
    throw Error("fft: planning failed");
  }
}

FftEngine::~FftEngine() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(buffer_);
}

void FftEngine::forward_pair(std::span<const double> a, std::span<const double> b,
                             std::span<Complex> a_hat, std::span<Complex> b_hat) {
  const bool has_b = !b.empty();
  const auto total = static_cast<std::ptrdiff_t>(size_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < total; ++p) buffer_[p] = Complex(a[p], has_b ? b[p] : 0.0);

  fftw_execute(static_cast<fftw_plan>(forward_plan_));

  const double scale = 1.0 / static_cast<double>(size_);
  const int n = n_;
  const bool want_b = !b_hat.empty();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const int mi = i == 0 ? 0 : n - i;
    for (int j = 0; j < n; ++j) {
      const int mj = j == 0 ? 0 : n - j;
      for (int l = 0; l < n; ++l) {
        const int ml = l == 0 ? 0 : n - l;
        const std::size_t p = (static_cast<std::size_t>(i) * n + j) * n + l;
        const std::size_t q = (static_cast<std::size_t>(mi) * n + mj) * n + ml;
        const Complex c = buffer_[p];
        const Complex cm = std::conj(buffer_[q]);
        a_hat[p] = 0.5 * scale * (c + cm);
        if (want_b) {
          const Complex d = 0.5 * scale * (c - cm);
          b_hat[p] = Complex(d.imag(), -d.real());  // d / i
        }
      }
    }
  }
}

void FftEngine::inverse_pair(std::span<const Complex> a_hat, std::span<const Complex> b_hat,
                             std::span<double> a, std::span<double> b) {
  const bool has_b = !b_hat.empty();
  const auto total = static_cast<std::ptrdiff_t>(size_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < total; ++p) {
    const Complex bb = has_b ? b_hat[p] : Complex(0.0, 0.0);
    // a_hat + i * b_hat
    buffer_[p] = Complex(a_hat[p].real() - bb.imag(), a_hat[p].imag() + bb.real());
  }

  fftw_execute(static_cast<fftw_plan>(backward_plan_));

  const bool want_b = !b.empty();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < total; ++p) {
    a[p] = buffer_[p].real();
    if (want_b) b[p] = buffer_[p].imag();
  }
}

namespace {
using EngineCache = std::map<int, std::unique_ptr<FftEngine>>;
EngineCache& engine_cache() {
  thread_local EngineCache cache;
  return cache;
}
}  // namespace

FftEngine& fft_engine(int n_modes) {
  auto& cache = engine_cache();
  auto it = cache.find(n_modes);
  if (it == cache.end()) it = cache.emplace(n_modes, std::make_unique<FftEngine>(n_modes)).first;
  return *it->second;
}

void set_thread_count(int threads) {
  if (threads < 0) throw InvalidArgument("threads must be >= 0");
  if (threads == 0) threads = omp_get_num_procs();
  g_threads.store(threads);
  omp_set_num_threads(threads);
  engine_cache().clear();
}

int thread_count() { return g_threads.load(); }

}  // namespace mhdd
