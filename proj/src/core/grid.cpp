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

#include "mhdd/grid.hpp"

#include <cmath>
#include <sstream>

#include "mhdd/error.hpp"

namespace mhdd {

GridSpec GridSpec::make(int n_modes, std::optional<double> truncation_radius,
                        double dealias_fraction) {
  GridSpec g;
  g.n_modes = n_modes;
  g.dealias_fraction = dealias_fraction;
  g.truncation_radius =
      truncation_radius ? *truncation_radius : dealias_fraction * n_modes / 2.0;
  g.validate();
  return g;
}

void GridSpec::validate() const {
  std::ostringstream msg;
  if (n_modes < 8 || n_modes % 2 != 0) {
    msg << "grid: n_modes must be even and >= 8, got " << n_modes;
  } else if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    msg << "grid: dealias_fraction must lie in (0, 1], got " << dealias_fraction;
  } else if (!std::isfinite(truncation_radius) || truncation_radius <= 0.0 ||
             truncation_radius > n_modes / 2.0) {
    msg << "grid: truncation_radius must lie in (0, N/2] = (0, " << n_modes / 2
        << "], got " << truncation_radius;
  } else {
    return;
  }
  throw InvalidArgument(msg.str());
}

}  // namespace mhdd
