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
#include <optional>
#include <string>
#include <vector>

#include "mhdd/config.hpp"
#include "mhdd/energy.hpp"
#include "mhdd/lemmas.hpp"
#include "mhdd/uniqueness.hpp"

namespace mhdd {

/// Process exit statuses shared by every subcommand.
enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitCheckFailed = 2, kExitBlowUp = 3 };

struct RunOutcome {
  int exit_status = kExitOk;
  long long steps = 0;
  double t_final = 0.0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::vector<CheckReport> checks;
  std::vector<std::string> warnings;
};

/// run + energy checks. Writes ledger.csv, checks.txt, checkpoint.mhdf and
/// summary.json into config.output_dir (created if missing). A blow-up still
/// writes the partial ledger and the summary. Usage and I/O problems throw.
RunOutcome run_experiment(const ExperimentConfig& config);

struct LemmaMatrix {
  std::vector<double> alphas{0.1, 1.0, 10.0};
  std::vector<double> betas{3.5, 4.0, 5.0, 7.0};
  std::vector<Modifier> fs{Modifier::log1, Modifier::log2, Modifier::log3};
  std::size_t pair_samples = 100000;  // monotonicity pairs per modifier
  std::size_t x_points = 10000;       // interpolation grid on [0, 100]
  std::uint64_t seed = 2024;
};

struct LemmaOutcome {
  int exit_status = kExitOk;
  std::vector<LemmaReport> interpolation;
  std::vector<LemmaReport> monotonicity;
  std::vector<LemmaReport> gronwall;
  std::vector<HypothesisReport> hypothesis;
};

/// Lemma suites over the matrix. Writes lemmas/interpolation.csv, monotonicity.csv,
/// gronwall.csv, hypothesis_H.csv and report.txt under out_dir. Exit status
/// 0 iff every applicable interpolation and monotonicity cell passes. An empty
/// matrix throws InvalidArgument.
LemmaOutcome run_lemma_suite(const LemmaMatrix& matrix, const std::string& out_dir);

struct TwinOutcome {
  int exit_status = kExitOk;
  TwinRunResult result;
  bool bound_holds = false;
  bool determinism_ok = false;  // eps = 0 twin identically zero
};

/// Twin run with config.twin.epsilon plus the eps = 0 determinism twin.
/// Writes twin.csv and summary.json into config.output_dir.
TwinOutcome run_twin_experiment(const ExperimentConfig& config);

/// Creates the directory (and parents); throws IoError with the path.
void ensure_directory(const std::string& path);

}  // namespace mhdd
