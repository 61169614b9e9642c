#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fbf::app {

struct SuiteResult {
  std::string suite;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;  ///< one line per failed check
};

/// operators, dynamics, rates, ergodic, all.
const std::vector<std::string>& suite_names();

/// Runs one suite (or every suite for "all") over the problem catalog.
/// Throws std::invalid_argument for an unknown suite name.
std::vector<SuiteResult> run_checks(std::string_view suite, std::uint64_t seed);

void print_check_table(std::ostream& os, const std::vector<SuiteResult>& results);

}  // namespace fbf::app
