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

#include <cstdint>
#include <string>
#include <string_view>

#include "mhdd/integrator.hpp"

namespace mhdd {

/// Which checks an experiment evaluates.
struct ChecksSpec {
  bool l2 = true;
  bool h1_additive = true;
  bool h1_exponential = true;
  bool damping_identity = false;
  bool lemmas = false;
  bool twin = false;
  bool operator==(const ChecksSpec&) const = default;
};

struct TwinSpec {
  double epsilon = 1e-6;
  /// Optional checkpoint whose (u, b) are used as the perturbation direction.
  std::string perturbation_checkpoint;
  bool operator==(const TwinSpec&) const = default;
};

struct ReportSpec {
  bool text = true;  // checks.txt
  bool json = true;  // summary.json
  bool operator==(const ReportSpec&) const = default;
};

/// Everything a CLI invocation needs. Serialized as one JSON document; see
/// README.md for the schema.
struct ExperimentConfig {
  std::string name = "experiment";
  SolverConfig solver;
  std::string output_dir = "out";
  ChecksSpec checks;
  TwinSpec twin;
  ReportSpec report;
  int threads = 0;  // 0 keeps the library default

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ParseError with line (syntax) or field path (schema) context.
ExperimentConfig parse_config(std::string_view json_text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::string& path);
std::string to_json(const ExperimentConfig& config);

/// MHDD_OUT_DIR overrides output_dir, MHDD_THREADS overrides threads.
void apply_environment(ExperimentConfig& config);

/// 64-bit FNV-1a of to_json(config).
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace mhdd
