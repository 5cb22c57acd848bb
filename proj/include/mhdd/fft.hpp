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
#include <span>

#include "mhdd/fields.hpp"

namespace mhdd {

/// One in-place complex 3D FFT plan with its own aligned buffer.
///
/// Real fields are transformed two at a time by packing them as the real
/// and imaginary parts of one complex field. The forward result is split
/// with the Hermitian formula, so returned coefficients satisfy
/// c(-k) == conj(c(k)) exactly.
///
/// Not thread-safe: each worker thread should use its own engine
/// (fft_engine() hands out a per-thread instance).
class FftEngine {
 public:
  explicit FftEngine(int n_modes);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  int n_modes() const { return n_; }

  /// Coefficients of the real fields a and b. `b` and `b_hat` may be empty.
  void forward_pair(std::span<const double> a, std::span<const double> b,
                    std::span<Complex> a_hat, std::span<Complex> b_hat);
  /// Point values of two Hermitian coefficient sets. `b_hat` and `b` may be empty.
  void inverse_pair(std::span<const Complex> a_hat, std::span<const Complex> b_hat,
                    std::span<double> a, std::span<double> b);

 private:
  int n_;
  std::size_t size_;
  Complex* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Engine for grids of size n owned by the calling thread.
FftEngine& fft_engine(int n_modes);

/// Caps the data parallelism of pointwise loops and FFT execution. Plans
/// already cached by a thread keep the thread count they were created with;
/// call before the first transform. Zero selects the number of processors.
void set_thread_count(int threads);
int thread_count();

}  // namespace mhdd
