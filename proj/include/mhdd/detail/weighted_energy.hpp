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

#include <complex>

namespace mhdd {

template <class Weight>
double weighted_energy(const SpectralVectorField& s, Weight&& w) {
  const GridSpec& g = s.grid;
  double total = 0.0;
  for (const auto& comp : s.c) {
    double acc = 0.0;
    std::size_t p = 0;
    for_each_mode(g, [&](int, int, int, int kx, int ky, int kz) {
      const double weight = w(kx, ky, kz);
      if (weight != 0.0) acc += weight * std::norm(comp[p]);
      ++p;
    });
    total += acc;
  }
  return g.volume() * total;
}

}  // namespace mhdd
