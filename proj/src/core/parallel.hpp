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
#include <vector>

namespace mhdd::detail {

/// Sum of term(p) for p in [0, count). Partial sums are formed over fixed
/// blocks (in parallel) and combined serially, so the result does not depend
/// on the thread count or schedule.
template <class Term>
double deterministic_sum(std::size_t count, Term&& term) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
    const std::size_t end = begin + kBlock < count ? begin + kBlock : count;
    double s = 0.0;
    for (std::size_t p = begin; p < end; ++p) s += term(p);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) fn(static_cast<std::size_t>(p));
}

}  // namespace mhdd::detail
