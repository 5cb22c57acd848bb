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

#include "mhdd/damping.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

constexpr double kE = std::numbers::e;
const double kEE = std::exp(kE);     // e^e
const double kEEE = std::exp(kEE);   // e^(e^e)

}  // namespace

double modifier_value(Modifier f, double z) {
  switch (f) {
    case Modifier::log1:
      return std::log(kE + z);
    case Modifier::log2:
      return std::log(std::log(kEE + z));
    case Modifier::log3:
      return std::log(std::log(std::log(kEEE + z)));
  }
  return 0.0;
}

double modifier_derivative(Modifier f, double z) {
  switch (f) {
    case Modifier::log1:
      return 1.0 / (kE + z);
    case Modifier::log2: {
      const double a = kEE + z;
      return 1.0 / (a * std::log(a));
    }
    case Modifier::log3: {
      const double a = kEEE + z;
      const double la = std::log(a);
      return 1.0 / (a * la * std::log(la));
    }
  }
  return 0.0;
}

std::optional<double> modifier_inverse(Modifier f, double y) {
  if (y < 1.0) return std::nullopt;  // f(0) = 1 for the whole catalog
  double z = 0.0;
  switch (f) {
    case Modifier::log1:
      z = std::exp(y) - kE;
      break;
    case Modifier::log2:
      z = std::exp(std::exp(y)) - kEE;
      break;
    case Modifier::log3:
      z = std::exp(std::exp(std::exp(y))) - kEEE;
      break;
  }
  return z < 0.0 ? 0.0 : z;
}

std::string_view modifier_name(Modifier f) {
  switch (f) {
    case Modifier::log1:
      return "log1";
    case Modifier::log2:
      return "log2";
    case Modifier::log3:
      return "log3";
  }
  return "?";
}

Modifier parse_modifier(std::string_view name) {
  for (Modifier f : kAllModifiers)
    if (modifier_name(f) == name) return f;
  throw InvalidArgument("unknown damping modifier '" + std::string(name) +
                        "' (expected log1, log2 or log3)");
}

std::string_view damping_kind_name(DampingKind k) {
  switch (k) {
    case DampingKind::none:
      return "none";
    case DampingKind::power:
      return "power";
    case DampingKind::generalized:
      return "generalized";
  }
  return "?";
}

DampingKind parse_damping_kind(std::string_view name) {
  for (DampingKind k : {DampingKind::none, DampingKind::power, DampingKind::generalized})
    if (damping_kind_name(k) == name) return k;
  throw InvalidArgument("unknown damping kind '" + std::string(name) +
                        "' (expected none, power or generalized)");
}

void DampingSpec::validate() const {
  switch (kind) {
    case DampingKind::none:
      return;
    case DampingKind::power:
      if (!(alpha > 0.0)) throw InvalidArgument("damping: alpha must be > 0");
      if (!(beta > 1.0)) throw InvalidArgument("damping: power kind requires beta > 1");
      return;
    case DampingKind::generalized:
      if (!(alpha > 0.0)) throw InvalidArgument("damping: alpha must be > 0");
      return;
  }
}

std::string DampingSpec::describe() const {
  std::ostringstream s;
  s << damping_kind_name(kind);
  if (kind == DampingKind::power) s << "(alpha=" << alpha << ", beta=" << beta << ")";
  if (kind == DampingKind::generalized)
    s << "(alpha=" << alpha << ", f=" << modifier_name(f) << ")";
  return s.str();
}

std::array<double, 3> damping_at(const DampingSpec& d, const std::array<double, 3>& u) {
  const double m2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  double factor = 0.0;
  switch (d.kind) {
    case DampingKind::none:
      break;
    case DampingKind::power:
      // |u|^(beta-1) with beta > 1 vanishes at u = 0
      factor = m2 > 0.0 ? d.alpha * std::pow(m2, 0.5 * (d.beta - 1.0)) : 0.0;
      break;
    case DampingKind::generalized:
      factor = d.alpha * modifier_value(d.f, m2) * m2;
      break;
  }
  return {factor * u[0], factor * u[1], factor * u[2]};
}

}  // namespace mhdd
