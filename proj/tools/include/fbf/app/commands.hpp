#pragma once

#include "fbf/app/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fbf::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct CommandContext {
  std::ostream& out;
  std::ostream& err;
  bool strict = false;
};

/// Headline numbers of one run, as written to the sweep aggregate.
struct RunOutcome {
  std::size_t violations = 0;
  double final_residual = 0;
  std::optional<double> time_to_tol;
};

/// Runs a resolved configuration and writes its artifacts into
/// config.output_dir: trajectory.csv, iterates.csv, envelope.csv,
/// coincidence.json and summary.json as the mode and problem allow.
RunOutcome execute(const ResolvedRun& run);

int cmd_solve(const std::filesystem::path& config_path, const CommandContext& ctx);
int cmd_check(const std::string& suite, std::uint64_t seed, const CommandContext& ctx);
/// One subdirectory run_NNN per value under the config's output_dir plus an
/// aggregate sweep.csv (value,final_residual,time_to_tol).
int cmd_sweep(const std::filesystem::path& config_path, const std::string& param,
              const std::vector<double>& values, const CommandContext& ctx,
              unsigned workers = 0);

}  // namespace fbf::app
