#include "fbf/app/config.hpp"

#include <toml.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fbf::app {
namespace {

nlohmann::json to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : *t) {
      j[std::string(k.str())] = to_json(v);
    }
    return j;
  }
  if (const auto* a = node.as_array()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : *a) {
      j.push_back(to_json(v));
    }
    return j;
  }
  if (const auto* v = node.as_integer()) {
    return v->get();
  }
  if (const auto* v = node.as_floating_point()) {
    return v->get();
  }
  if (const auto* v = node.as_boolean()) {
    return v->get();
  }
  if (const auto* v = node.as_string()) {
    return v->get();
  }
  std::ostringstream os;
  node.visit([&](const auto& v) { os << v; });
  return os.str();
}

const toml::table* subtable(const toml::table& root, std::string_view key) {
  const auto* node = root.get(key);
  if (!node) {
    return nullptr;
  }
  if (!node->is_table()) {
    throw ConfigError(std::string(key), "expected a table");
  }
  return node->as_table();
}

double number_at(const toml::table& t, std::string_view key, std::string_view prefix,
                 double fallback) {
  const auto* node = t.get(key);
  if (!node) {
    return fallback;
  }
  if (auto v = node->value<double>()) {
    return *v;
  }
  throw ConfigError(std::string(prefix) + std::string(key), "expected a number");
}

std::string string_at(const toml::table& t, std::string_view key, std::string_view prefix,
                      std::string fallback) {
  const auto* node = t.get(key);
  if (!node) {
    return fallback;
  }
  if (auto v = node->value<std::string>()) {
    return *v;
  }
  throw ConfigError(std::string(prefix) + std::string(key), "expected a string");
}

/// Every key of `t` except the excluded ones, as catalog parameters.
Params remaining_params(const toml::table& t, std::initializer_list<std::string_view> excluded) {
  Params p = Params::object();
  for (const auto& [k, v] : t) {
    if (std::find(excluded.begin(), excluded.end(), k.str()) == excluded.end()) {
      p[std::string(k.str())] = to_json(v);
    }
  }
  return p;
}

Mode parse_mode(const std::string& s) {
  if (s == "continuous") {
    return Mode::continuous;
  }
  if (s == "discrete") {
    return Mode::discrete;
  }
  if (s == "both") {
    return Mode::both;
  }
  throw ConfigError("mode", "expected continuous, discrete or both, got '" + s + "'");
}

RunConfig parse(const toml::table& root) {
  RunConfig c;

  const auto* problem = subtable(root, "problem");
  if (!problem) {
    throw ConfigError("problem", "missing [problem] table");
  }
  c.problem.name = string_at(*problem, "name", "problem.", "");
  if (c.problem.name.empty()) {
    throw ConfigError("problem.name", "missing problem name");
  }
  c.problem.params = remaining_params(*problem, {"name"});

  c.mode = parse_mode(string_at(root, "mode", "", "continuous"));

  if (const auto* s = subtable(root, "schedule")) {
    c.schedule.name = string_at(*s, "name", "schedule.", "constant");
    if (const auto* rel = s->get("relative")) {
      auto v = rel->value<bool>();
      if (!v) {
        throw ConfigError("schedule.relative", "expected a boolean");
      }
      c.schedule.relative = *v;
    }
    c.schedule.params = remaining_params(*s, {"name", "relative"});
  } else {
    c.schedule.relative = true;
    c.schedule.params = Params{{"value", 0.5}};
  }

  if (const auto* t = subtable(root, "integrator")) {
    try {
      c.integrator.method = parse_method(string_at(*t, "method", "integrator.", "rk4"));
    } catch (const Error& e) {
      throw ConfigError("integrator.method", e.what());
    }
    c.integrator.h = number_at(*t, "h", "integrator.", c.integrator.h);
    c.integrator.horizon = number_at(*t, "horizon", "integrator.", c.integrator.horizon);
    c.integrator.sample_every =
        number_at(*t, "sample_every", "integrator.", c.integrator.h);
  }
  if (!(c.integrator.h > 0) || !std::isfinite(c.integrator.h)) {
    throw ConfigError("integrator.h", "must be positive");
  }
  if (!(c.integrator.horizon >= c.integrator.h) || !std::isfinite(c.integrator.horizon)) {
    throw ConfigError("integrator.horizon", "must be finite and at least h");
  }
  if (!(c.integrator.sample_every > 0)) {
    throw ConfigError("integrator.sample_every", "must be positive");
  }

  if (const auto* d = subtable(root, "discrete")) {
    const double max_iter = number_at(*d, "max_iter", "discrete.", 1000);
    if (!(max_iter >= 1) || max_iter != std::floor(max_iter)) {
      throw ConfigError("discrete.max_iter", "must be a positive integer");
    }
    c.max_iter = static_cast<std::size_t>(max_iter);
    c.tol = number_at(*d, "tol", "discrete.", c.tol);
    if (!(c.tol >= 0)) {
      throw ConfigError("discrete.tol", "must be nonnegative");
    }
  }

  if (const auto* s = subtable(root, "sweep")) {
    if (s->get("tol")) {
      c.sweep_tol = number_at(*s, "tol", "sweep.", 0);
      if (!(*c.sweep_tol >= 0)) {
        throw ConfigError("sweep.tol", "must be nonnegative");
      }
    }
  }

  if (const auto* m = root.get("monitors")) {
    const auto* arr = m->as_array();
    if (!arr) {
      throw ConfigError("monitors", "expected an array of monitor names");
    }
    for (const auto& v : *arr) {
      auto name = v.value<std::string>();
      const auto& known = monitor_names();
      if (!name || std::find(known.begin(), known.end(), *name) == known.end()) {
        throw ConfigError("monitors", "unknown monitor " + to_json(v).dump());
      }
      c.monitors.push_back(*name);
    }
  }

  c.output_dir = string_at(root, "output_dir", "", "out");

  const double seed = number_at(root, "seed", "", 0);
  if (!(seed >= 0) || seed != std::floor(seed)) {
    throw ConfigError("seed", "must be a nonnegative integer");
  }
  c.seed = static_cast<std::uint64_t>(seed);

  if (const auto* x0 = root.get("x0")) {
    const nlohmann::json j = to_json(*x0);
    try {
      if (j.is_number()) {
        c.x0 = Vector::Constant(1, j.get<double>());
      } else {
        c.x0 = params::vector(Params{{"x0", j}}, "x0");
      }
    } catch (const std::exception& e) {
      throw ConfigError("x0", e.what());
    }
  }
  return c;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::continuous:
      return "continuous";
    case Mode::discrete:
      return "discrete";
    case Mode::both:
      return "both";
  }
  return "?";
}

struct ConfigDocument::Impl {
  toml::table root;
};

ConfigDocument::ConfigDocument(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
ConfigDocument::ConfigDocument(const ConfigDocument& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
ConfigDocument& ConfigDocument::operator=(const ConfigDocument& other) {
  impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
ConfigDocument::ConfigDocument(ConfigDocument&&) noexcept = default;
ConfigDocument& ConfigDocument::operator=(ConfigDocument&&) noexcept = default;
ConfigDocument::~ConfigDocument() = default;

ConfigDocument ConfigDocument::from_file(const std::filesystem::path& path) {
  try {
    return ConfigDocument(std::make_unique<Impl>(Impl{toml::parse_file(path.string())}));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " at line " << e.source().begin.line;
    throw ConfigError("<file>", path.string() + ": " + os.str());
  }
}

ConfigDocument ConfigDocument::from_string(std::string_view text) {
  try {
    return ConfigDocument(std::make_unique<Impl>(Impl{toml::parse(text)}));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " at line " << e.source().begin.line;
    throw ConfigError("<text>", os.str());
  }
}

void ConfigDocument::set_number(std::string_view dotted_key, double value) {
  const std::string key(dotted_key);
  toml::table* table = &impl_->root;
  std::string_view rest = dotted_key;
  for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
    auto* next = table->get(rest.substr(0, dot));
    if (!next || !next->is_table()) {
      throw ConfigError(key, "no such table in the config");
    }
    table = next->as_table();
    rest.remove_prefix(dot + 1);
  }
  const auto* leaf = table->get(rest);
  if (!leaf) {
    throw ConfigError(key, "no such key in the config");
  }
  if (!leaf->is_number()) {
    throw ConfigError(key, "not a numeric key");
  }
  if (leaf->is_integer() && value == std::floor(value)) {
    table->insert_or_assign(rest, static_cast<std::int64_t>(value));
  } else {
    table->insert_or_assign(rest, value);
  }
}

RunConfig ConfigDocument::to_run_config() const { return parse(impl_->root); }

RunConfig load_config(const std::filesystem::path& path) {
  return ConfigDocument::from_file(path).to_run_config();
}

ResolvedRun resolve(const RunConfig& config) {
  std::optional<ProblemInstance> problem;
  try {
    problem.emplace(build(config.problem));
  } catch (const Error& e) {
    throw ConfigError("problem", e.what());
  }

  const double beta = problem->beta();
  Params sp = config.schedule.params;
  if (config.schedule.relative) {
    for (const char* key : {"value", "lo", "hi", "start", "end"}) {
      if (sp.contains(key) && sp[key].is_number()) {
        sp[key] = sp[key].get<double>() * beta;
      }
    }
  }
  std::optional<StepSchedule> schedule;
  try {
    schedule.emplace(schedule_catalog(config.schedule.name, sp, beta));
  } catch (const Error& e) {
    throw ConfigError("schedule", e.what());
  }

  Vector x0 = config.x0 ? *config.x0 : Vector::Ones(problem->dimension());
  if (x0.size() == 1 && problem->dimension() > 1 && config.x0) {
    x0 = Vector::Constant(problem->dimension(), x0[0]);
  }
  if (x0.size() != problem->dimension()) {
    throw ConfigError("x0", "expected " + std::to_string(problem->dimension()) + " entries");
  }
  if (!x0.allFinite()) {
    throw ConfigError("x0", "non-finite entries");
  }
  return ResolvedRun{config, std::move(*problem), std::move(*schedule), std::move(x0)};
}

const std::vector<std::string>& monitor_names() {
  static const std::vector<std::string> names = {
      "fejer",     "residual_integral", "exponential_envelope", "ergodic_objective",
      "zdot_bound", "inclusion",        "velocity",             "lipschitz"};
  return names;
}

}  // namespace fbf::app
