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

#include <doctest.h>

#include <cstdlib>
#include <string>

#include "mhdd/config.hpp"
#include "mhdd/error.hpp"

using namespace mhdd;

namespace {

std::string parse_message(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults and full round trip") {
  const ExperimentConfig d = parse_config("{}");
  CHECK(d == ExperimentConfig{});

  const char* text = R"({
    "name": "roundtrip",
    "grid": {"n": 16, "truncation_radius": 5.0},
    "viscosity": {"horizontal": 2.0, "vertical": 0.5},
    "damping": {"kind": "generalized", "alpha": 0.3, "f": "log2"},
    "time": {"dt": 0.002, "t_end": 0.5, "ledger_stride": 4, "cfl_target": 0.25, "strict_cfl": true},
    "seed": 99,
    "initial_condition": {"kind": "single_mode", "k": [1, 2, 0], "amplitude": 0.5},
    "output": {"directory": "somewhere"},
    "checks": {"l2": false, "damping_identity": true, "quadrature_points": 48},
    "twin": {"epsilon": 1e-5},
    "report": {"json": false},
    "threads": 3
  })";
  const ExperimentConfig c = parse_config(text);
  CHECK(c.name == "roundtrip");
  CHECK(c.solver.grid.n_modes == 16);
  CHECK(c.solver.grid.truncation_radius == 5.0);
  CHECK(c.solver.viscosity.vertical == 0.5);
  CHECK(c.solver.damping == DampingSpec::generalized(0.3, Modifier::log2));
  CHECK(c.solver.ledger_stride == 4);
  CHECK(c.solver.strict_cfl);
  CHECK(c.solver.seed == 99);
  CHECK(c.solver.initial.wavevector == std::array<int, 3>{1, 2, 0});
  CHECK(c.solver.quadrature_points == 48);
  CHECK(c.output_dir == "somewhere");
  CHECK_FALSE(c.checks.l2);
  CHECK(c.checks.damping_identity);
  CHECK(c.twin.epsilon == 1e-5);
  CHECK_FALSE(c.report.json);
  CHECK(c.threads == 3);

  CHECK(parse_config(to_json(c)) == c);
  CHECK(config_hash(parse_config(to_json(c))) == config_hash(c));
  ExperimentConfig other = c;
  other.solver.seed = 100;
  CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("errors carry line or field context") {
  CHECK(parse_message("{\n  \"name\": \"x\",\n  oops\n}").find("line 3") != std::string::npos);
  CHECK(parse_message(R"({"grid": {"n": 15}})").find("grid") != std::string::npos);
  CHECK(parse_message(R"({"time": {"dt": "fast"}})").find("time.dt") != std::string::npos);
  CHECK(parse_message(R"({"damping": {"kind": "power", "beta": 0.5}})").find("damping") != std::string::npos);
  CHECK(parse_message(R"({"damping": {"kind": "generalized", "f": "log9"}})").find("damping.f") !=
        std::string::npos);
  CHECK(parse_message(R"({"grid": {"n": 16, "extra": 1}})").find("grid.extra") != std::string::npos);
  CHECK(parse_message(R"({"surprise": true})").find("surprise") != std::string::npos);
  CHECK(parse_message(R"({"initial_condition": {"kind": "from_checkpoint"}})").find("initial_condition.path") !=
        std::string::npos);
  CHECK(parse_message(R"({"seed": -1})").find("seed") != std::string::npos);
  CHECK(parse_message(R"([1, 2])").find("expected an object") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), IoError);
}

TEST_CASE("environment overrides") {
  ExperimentConfig c;
  setenv("MHDD_OUT_DIR", "/tmp/mhdd_env_out", 1);
  setenv("MHDD_THREADS", "2", 1);
  apply_environment(c);
  CHECK(c.output_dir == "/tmp/mhdd_env_out");
  CHECK(c.threads == 2);
  setenv("MHDD_THREADS", "many", 1);
  CHECK_THROWS_AS(apply_environment(c), ParseError);
  unsetenv("MHDD_OUT_DIR");
  unsetenv("MHDD_THREADS");
  ExperimentConfig d;
  apply_environment(d);
  CHECK(d == ExperimentConfig{});
}
