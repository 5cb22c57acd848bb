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

#include "mhdd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mhdd/error.hpp"

namespace mhdd {
namespace {

using json = nlohmann::json;

// Typed access to one JSON object with its dotted path for messages.
// Keys that are never read are reported as unknown by finish().
class Section {
 public:
  Section(const json& j, std::string path, std::string_view source)
      : j_(j), path_(std::move(path)), source_(source) {
    if (!j_.is_object()) fail(path_.empty() ? "document" : path_, "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key, double fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(field(key), "expected a number");
    return v.get<double>();
  }
  long long integer(const char* key, long long fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(field(key), "expected an integer");
    return v.get<long long>();
  }
  std::uint64_t unsigned_integer(const char* key, std::uint64_t fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(field(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  bool boolean(const char* key, bool fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(field(key), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const char* key, const std::string& fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(field(key), "expected a string");
    return v.get<std::string>();
  }
  std::array<int, 3> int3(const char* key, std::array<int, 3> fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array() || v.size() != 3) fail(field(key), "expected an array of three integers");
    std::array<int, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number_integer()) fail(field(key), "expected an array of three integers");
      out[i] = v[i].get<int>();
    }
    return out;
  }
  std::optional<Section> child(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return Section(j_.at(key), field(key), source_);
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!seen_.count(item.key())) fail(field(item.key().c_str()), "unknown field");
  }

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw ParseError(std::string(source_) + ": field '" + where + "': " + what);
  }
  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::string_view source_;
  std::set<std::string> seen_;
};

// Runs a validating call and turns InvalidArgument into a ParseError that
// names the field.
template <class Fn>
void validated(const Section& s, const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    s.fail(where, e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (name.empty()) throw InvalidArgument("name must be nonempty");
  if (output_dir.empty()) throw InvalidArgument("output.directory must be nonempty");
  if (threads < 0) throw InvalidArgument("threads must be >= 0");
  if (!(twin.epsilon >= 0.0)) throw InvalidArgument("twin.epsilon must be >= 0");
  solver.validate();
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  ExperimentConfig c;
  SolverConfig& s = c.solver;
  Section root(doc, "", source);
  c.name = root.string("name", c.name);

  if (auto g = root.child("grid")) {
    const int n = static_cast<int>(g->integer("n", s.grid.n_modes));
    const double frac = g->number("dealias_fraction", 2.0 / 3.0);
    std::optional<double> radius;
    if (g->has("truncation_radius")) radius = g->number("truncation_radius", 0.0);
    validated(*g, "grid", [&] { s.grid = GridSpec::make(n, radius, frac); });
    g->finish();
  }
  if (auto v = root.child("viscosity")) {
    s.viscosity.horizontal = v->number("horizontal", 1.0);
    s.viscosity.vertical = v->number("vertical", 1.0);
    validated(*v, "viscosity", [&] { s.viscosity.validate(); });
    v->finish();
  }
  if (auto d = root.child("damping")) {
    DampingSpec spec;
    validated(*d, "damping.kind", [&] { spec.kind = parse_damping_kind(d->string("kind", "none")); });
    if (spec.kind != DampingKind::none) spec.alpha = d->number("alpha", 1.0);
    if (spec.kind == DampingKind::power) spec.beta = d->number("beta", 4.0);
    if (spec.kind == DampingKind::generalized)
      validated(*d, "damping.f", [&] { spec.f = parse_modifier(d->string("f", "log1")); });
    validated(*d, "damping", [&] { spec.validate(); });
    s.damping = spec;
    d->finish();
  }
  if (auto t = root.child("time")) {
    s.dt = t->number("dt", s.dt);
    s.t_end = t->number("t_end", s.t_end);
    s.ledger_stride = t->integer("ledger_stride", s.ledger_stride);
    s.cfl_target = t->number("cfl_target", s.cfl_target);
    s.strict_cfl = t->boolean("strict_cfl", s.strict_cfl);
    t->finish();
  }
  s.seed = root.unsigned_integer("seed", s.seed);
  if (auto ic = root.child("initial_condition")) {
    InitialCondition& i = s.initial;
    validated(*ic, "initial_condition.kind", [&] {
      i.kind = parse_initial_kind(ic->string("kind", std::string(initial_kind_name(i.kind))));
    });
    switch (i.kind) {
      case InitialKind::random_divfree:
        i.target_h1 = ic->number("target_h1", i.target_h1);
        break;
      case InitialKind::single_mode:
        i.wavevector = ic->int3("k", i.wavevector);
        i.amplitude = ic->number("amplitude", i.amplitude);
        break;
      case InitialKind::taylor_green_like:
        i.amplitude = ic->number("amplitude", i.amplitude);
        break;
      case InitialKind::from_checkpoint:
        i.path = ic->string("path", "");
        if (i.path.empty()) ic->fail("initial_condition.path", "required for from_checkpoint");
        break;
    }
    ic->finish();
  }
  if (auto o = root.child("output")) {
    c.output_dir = o->string("directory", c.output_dir);
    o->finish();
  }
  if (auto k = root.child("checks")) {
    c.checks.l2 = k->boolean("l2", c.checks.l2);
    c.checks.h1_additive = k->boolean("h1_additive", c.checks.h1_additive);
    c.checks.h1_exponential = k->boolean("h1_exponential", c.checks.h1_exponential);
    c.checks.damping_identity = k->boolean("damping_identity", c.checks.damping_identity);
    c.checks.lemmas = k->boolean("lemmas", c.checks.lemmas);
    c.checks.twin = k->boolean("twin", c.checks.twin);
    s.quadrature_points = static_cast<int>(k->integer("quadrature_points", s.quadrature_points));
    k->finish();
  }
  if (auto tw = root.child("twin")) {
    c.twin.epsilon = tw->number("epsilon", c.twin.epsilon);
    c.twin.perturbation_checkpoint = tw->string("perturbation_checkpoint", "");
    tw->finish();
  }
  if (auto r = root.child("report")) {
    c.report.text = r->boolean("text", c.report.text);
    c.report.json = r->boolean("json", c.report.json);
    r->finish();
  }
  c.threads = static_cast<int>(root.integer("threads", c.threads));
  root.finish();
  validated(root, "config", [&] { c.validate(); });
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_json(const ExperimentConfig& c) {
  const SolverConfig& s = c.solver;
  json j;
  j["name"] = c.name;
  j["grid"] = {{"n", s.grid.n_modes},
               {"truncation_radius", s.grid.truncation_radius},
               {"dealias_fraction", s.grid.dealias_fraction}};
  j["viscosity"] = {{"horizontal", s.viscosity.horizontal}, {"vertical", s.viscosity.vertical}};
  json d = {{"kind", std::string(damping_kind_name(s.damping.kind))}};
  if (s.damping.kind != DampingKind::none) d["alpha"] = s.damping.alpha;
  if (s.damping.kind == DampingKind::power) d["beta"] = s.damping.beta;
  if (s.damping.kind == DampingKind::generalized) d["f"] = std::string(modifier_name(s.damping.f));
  j["damping"] = d;
  j["time"] = {{"dt", s.dt},
               {"t_end", s.t_end},
               {"ledger_stride", s.ledger_stride},
               {"cfl_target", s.cfl_target},
               {"strict_cfl", s.strict_cfl}};
  j["seed"] = s.seed;
  json ic = {{"kind", std::string(initial_kind_name(s.initial.kind))}};
  switch (s.initial.kind) {
    case InitialKind::random_divfree:
      ic["target_h1"] = s.initial.target_h1;
      break;
    case InitialKind::single_mode:
      ic["k"] = s.initial.wavevector;
      ic["amplitude"] = s.initial.amplitude;
      break;
    case InitialKind::taylor_green_like:
      ic["amplitude"] = s.initial.amplitude;
      break;
    case InitialKind::from_checkpoint:
      ic["path"] = s.initial.path;
      break;
  }
  j["initial_condition"] = ic;
  j["output"] = {{"directory", c.output_dir}};
  j["checks"] = {{"l2", c.checks.l2},
                 {"h1_additive", c.checks.h1_additive},
                 {"h1_exponential", c.checks.h1_exponential},
                 {"damping_identity", c.checks.damping_identity},
                 {"lemmas", c.checks.lemmas},
                 {"twin", c.checks.twin},
                 {"quadrature_points", s.quadrature_points}};
  j["twin"] = {{"epsilon", c.twin.epsilon}, {"perturbation_checkpoint", c.twin.perturbation_checkpoint}};
  j["report"] = {{"text", c.report.text}, {"json", c.report.json}};
  j["threads"] = c.threads;
  return j.dump(2) + "\n";
}

void apply_environment(ExperimentConfig& c) {
  if (const char* dir = std::getenv("MHDD_OUT_DIR"); dir && *dir) c.output_dir = dir;
  if (const char* th = std::getenv("MHDD_THREADS"); th && *th) {
    char* end = nullptr;
    const long v = std::strtol(th, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) throw ParseError("MHDD_THREADS: expected a non-negative integer");
    c.threads = static_cast<int>(v);
  }
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mhdd
