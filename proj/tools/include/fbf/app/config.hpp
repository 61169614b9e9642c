#pragma once

#include "fbf/discrete.hpp"
#include "fbf/dynamics.hpp"
#include "fbf/problems.hpp"
#include "fbf/schedule.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fbf::app {

/// A configuration problem, tagged with the dotted key that caused it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class Mode { continuous, discrete, both };

const char* to_string(Mode m);

struct ScheduleSpec {
  std::string name = "constant";
  Params params = Params::object();
  bool relative = false;  ///< scale value/lo/hi/start/end by β
};

struct RunConfig {
  ProblemSpec problem;
  Mode mode = Mode::continuous;
  ScheduleSpec schedule;
  IntegrateOptions integrator;
  std::size_t max_iter = 1000;
  double tol = 1e-10;
  std::optional<double> sweep_tol;
  std::vector<std::string> monitors;  ///< empty: every applicable monitor
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<Vector> x0;
};

/// Parsed but unvalidated configuration document.
class ConfigDocument {
 public:
  static ConfigDocument from_file(const std::filesystem::path& path);
  static ConfigDocument from_string(std::string_view text);

  ConfigDocument(const ConfigDocument&);
  ConfigDocument& operator=(const ConfigDocument&);
  ConfigDocument(ConfigDocument&&) noexcept;
  ConfigDocument& operator=(ConfigDocument&&) noexcept;
  ~ConfigDocument();

  /// Replaces the numeric value at a dotted key. Throws ConfigError when the
  /// key is absent or not numeric.
  void set_number(std::string_view dotted_key, double value);

  RunConfig to_run_config() const;

 private:
  struct Impl;
  explicit ConfigDocument(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

RunConfig load_config(const std::filesystem::path& path);

/// Everything a run needs, built and cross-validated against the problem.
struct ResolvedRun {
  RunConfig config;
  ProblemInstance problem;
  StepSchedule schedule;
  Vector x0;
};

/// Builds the problem and schedule, checking the schedule range against β
/// and the integrator settings. Errors name the offending key.
ResolvedRun resolve(const RunConfig& config);

/// Names accepted in the `monitors` list.
const std::vector<std::string>& monitor_names();

}  // namespace fbf::app
