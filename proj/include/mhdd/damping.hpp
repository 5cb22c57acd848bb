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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace mhdd {

/// Cataloged slowly growing modifiers f for the generalized damping
/// alpha f(|u|^2) |u|^2 u.
///   log1: f(z) = log(e + z)
///   log2: f(z) = log(log(e^e + z))
///   log3: f(z) = log(log(log(e^(e^e) + z)))
/// Each is strictly increasing on [0, inf) with f(0) = 1.
enum class Modifier { log1, log2, log3 };

inline constexpr std::array<Modifier, 3> kAllModifiers = {Modifier::log1, Modifier::log2,
                                                          Modifier::log3};

double modifier_value(Modifier f, double z);
double modifier_derivative(Modifier f, double z);
/// f^{-1}(y), or nullopt when y < f(0) (outside the range of f on [0, inf)).
std::optional<double> modifier_inverse(Modifier f, double y);
std::string_view modifier_name(Modifier f);
/// Throws InvalidArgument for names outside the catalog.
Modifier parse_modifier(std::string_view name);

enum class DampingKind { none, power, generalized };

std::string_view damping_kind_name(DampingKind k);
DampingKind parse_damping_kind(std::string_view name);

/// Which absorption term acts on the velocity.
struct DampingSpec {
  DampingKind kind = DampingKind::none;
  double alpha = 0.0;
  double beta = 0.0;  // power kind only
  Modifier f = Modifier::log1;  // generalized kind only

  static DampingSpec none() { return {}; }
  static DampingSpec power(double alpha, double beta) {
    return {DampingKind::power, alpha, beta, Modifier::log1};
  }
  static DampingSpec generalized(double alpha, Modifier f) {
    return {DampingKind::generalized, alpha, 0.0, f};
  }

  /// power needs alpha > 0 and beta > 1; generalized needs alpha > 0.
  void validate() const;
  bool active() const { return kind != DampingKind::none && alpha != 0.0; }
  std::string describe() const;

  bool operator==(const DampingSpec&) const = default;
};

/// The damping vector at one point.
std::array<double, 3> damping_at(const DampingSpec& d, const std::array<double, 3>& u);

}  // namespace mhdd
