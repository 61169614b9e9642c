#include "fbf/app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Forward-backward-forward dynamics: solve, sweep and self-check"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "Exit with status 2 when a monitor is violated");

  std::string solve_config;
  auto* solve = app.add_subcommand("solve", "Run a configuration and write its artifacts");
  solve->add_option("config", solve_config, "TOML configuration file")->required();

  std::string suite;
  std::uint64_t seed = 42;
  auto* check = app.add_subcommand("check", "Run a property suite over the problem catalog");
  check->add_option("suite", suite, "operators, dynamics, rates, ergodic or all")->required();
  check->add_option("--seed", seed, "Random seed");

  std::string sweep_config;
  std::string param;
  std::vector<double> values;
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Re-run a configuration over values of one key");
  sweep->add_option("config", sweep_config, "TOML configuration file")->required();
  sweep->add_option("--param", param, "Dotted numeric key, e.g. schedule.value")->required();
  sweep->add_option("--values", values, "Comma-separated values")->delimiter(',')->required();
  sweep->add_option("--jobs", workers, "Worker threads (0: hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  const fbf::app::CommandContext ctx{std::cout, std::cerr, strict};
  if (*solve) {
    return fbf::app::cmd_solve(solve_config, ctx);
  }
  if (*check) {
    return fbf::app::cmd_check(suite, seed, ctx);
  }
  return fbf::app::cmd_sweep(sweep_config, param, values, ctx, workers);
}
