#include "fbf/app/commands.hpp"

#include "fbf/app/checks.hpp"
#include "fbf/diagnostics.hpp"
#include "fbf/export.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace fbf::app {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::size_t kCoincidenceSteps = 100;
constexpr double kCoincidenceTol = 1e-12;
constexpr std::size_t kLipschitzPairs = 2000;

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson optional_vector_json(const std::optional<Vector>& v) {
  return v ? vector_json(*v) : ojson(nullptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot write " + path.string());
  }
  os << text;
}

template <typename Writer>
void write_with(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream os;
  writer(os);
  write_text(path, os.str());
}

bool wanted(const RunConfig& c, const std::string& name) {
  return c.monitors.empty() ||
         std::find(c.monitors.begin(), c.monitors.end(), name) != c.monitors.end();
}

MonitorVerdict inapplicable(const std::string& name, const std::string& why) {
  MonitorVerdict v;
  v.name = name;
  v.applicable = false;
  v.detail = why;
  return v;
}

/// x̄ when known, x0, and three seeded points of dom A (resolvent images).
std::vector<Vector> probe_points(const ResolvedRun& run) {
  std::vector<Vector> probes;
  if (const auto& xbar = run.problem.known_solution()) {
    probes.push_back(*xbar);
  }
  probes.push_back(run.x0);
  std::mt19937_64 rng(run.config.seed);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int k = 0; k < 3; ++k) {
    Vector y(run.problem.dimension());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y[i] = unit(rng);
    }
    probes.push_back(run.problem.a().resolvent(1.0, y));
  }
  return probes;
}

ojson tag(const MonitorVerdict& v, const char* record) {
  ojson j = to_json(v);
  j["record"] = record;
  return j;
}

std::optional<double> first_below(const std::vector<std::pair<double, double>>& series,
                                  double tol) {
  for (const auto& [t, r] : series) {
    if (r <= tol) {
      return t;
    }
  }
  return std::nullopt;
}

double coordinate_relative_gap(const Vector& a, const Vector& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

ojson coincidence_report(const ResolvedRun& run) {
  const std::size_t steps = std::min(run.config.max_iter, kCoincidenceSteps);
  IntegrateOptions euler;
  euler.method = Method::euler;
  euler.h = 1.0;
  euler.sample_every = 1.0;
  euler.horizon = static_cast<double>(steps);
  const TrajectoryRecord traj = integrate(run.problem, run.schedule, run.x0, euler);
  const IterateRecord iters = run_tseng(run.problem, GammaSequence(run.schedule), run.x0, steps, 0.0);

  double worst = 0;
  std::size_t worst_step = 0;
  std::size_t compared = 0;
  for (const auto& s : traj.samples) {
    const auto k = static_cast<std::size_t>(std::llround(s.t));
    const Vector* xk = nullptr;
    if (k < iters.iterates.size()) {
      xk = &iters.iterates[k].x;
    } else if (k == iters.iterates.size() && !iters.converged) {
      xk = &iters.final_x;
    } else {
      break;
    }
    const double gap = coordinate_relative_gap(s.x, *xk);
    if (gap > worst) {
      worst = gap;
      worst_step = k;
    }
    ++compared;
  }
  ojson j;
  j["steps"] = steps;
  j["compared_states"] = compared;
  j["max_relative_gap"] = worst;
  j["worst_step"] = worst_step;
  j["tolerance"] = kCoincidenceTol;
  j["holds"] = worst <= kCoincidenceTol;
  return j;
}

MonitorVerdict lipschitz_verdict(const ResolvedRun& run) {
  const double beta = run.problem.beta();
  const std::vector<double> gammas = {0.1 * beta, 0.5 * beta, 0.9 * beta};
  const auto report = lipschitz_probe(run.problem, gammas, kLipschitzPairs, 10.0, run.config.seed);
  MonitorVerdict v;
  v.name = "lipschitz";
  const double bound = std::sqrt(6.0) + 1e-8;
  v.value = report.max_ratio;
  v.worst_margin = report.max_ratio - std::sqrt(6.0);
  v.holds = report.max_ratio <= bound;
  v.detail = "max ratio over " + std::to_string(report.pairs) + " pairs";
  return v;
}

void continuous_monitors(const ResolvedRun& run, const TrajectoryRecord& record, ojson& monitors) {
  const auto& c = run.config;
  const auto& p = run.problem;
  const bool explicit_list = !c.monitors.empty();
  auto add = [&](const MonitorVerdict& v) {
    if (v.applicable || explicit_list) {
      monitors.push_back(tag(v, "trajectory"));
    }
  };

  if (wanted(c, "fejer")) {
    add(p.known_solution() ? fejer_monitor(record, *p.known_solution())
                           : inapplicable("fejer", "no certified solution"));
  }
  if (wanted(c, "residual_integral")) {
    add(residual_integral_monitor(record, run.schedule, p.known_solution()));
  }
  if (wanted(c, "exponential_envelope")) {
    if (p.rho() && p.known_solution()) {
      const auto report = exponential_envelope(record, run.schedule, *p.rho(), *p.known_solution());
      write_with(c.output_dir / "envelope.csv",
                 [&](std::ostream& os) { write_envelope_csv(os, report); });
      add(envelope_verdict(report));
    } else {
      add(inapplicable("exponential_envelope", "no certified strong-monotonicity modulus"));
    }
  }
  if (wanted(c, "ergodic_objective")) {
    if (p.has_objective()) {
      const auto probes = probe_points(run);
      add(ergodic_objective_monitor(record, p.objective(), probes));
    } else {
      add(inapplicable("ergodic_objective", "problem has no objective"));
    }
  }
  if (wanted(c, "zdot_bound")) {
    add(zdot_bound_monitor(record, run.schedule));
  }
  if (wanted(c, "inclusion")) {
    add(inclusion_monitor(p, record));
  }
  if (wanted(c, "velocity")) {
    add(velocity_monitor(p, record));
  }
  if (wanted(c, "lipschitz")) {
    add(lipschitz_verdict(run));
  }
}

void discrete_monitors(const ResolvedRun& run, const IterateRecord& record, ojson& monitors) {
  const auto& c = run.config;
  const auto& p = run.problem;
  if (wanted(c, "fejer") && p.known_solution()) {
    monitors.push_back(tag(fejer_monitor(record, *p.known_solution()), "iterates"));
  }
  if (wanted(c, "ergodic_objective") && p.has_objective()) {
    const auto probes = probe_points(run);
    monitors.push_back(tag(ergodic_objective_monitor(record, p.objective(), probes), "iterates"));
  }
}

ojson problem_json(const ResolvedRun& run) {
  const auto& p = run.problem;
  ojson j;
  j["name"] = p.name();
  j["dimension"] = p.dimension();
  j["beta"] = number_or_null(p.beta());
  j["rho"] = p.rho() ? ojson(*p.rho()) : ojson(nullptr);
  j["known_solution"] = optional_vector_json(p.known_solution());
  j["certification"] = {{"beta", to_string(p.certification().beta)},
                        {"rho", to_string(p.certification().rho)},
                        {"solution", to_string(p.certification().solution)}};
  j["params"] = ojson::parse(p.params.dump());
  return j;
}

std::size_t count_violations(const ojson& monitors) {
  return static_cast<std::size_t>(std::count_if(monitors.begin(), monitors.end(), [](const ojson& m) {
    return m["status"] == "violated";
  }));
}

std::vector<std::string> violated_names(const ojson& monitors) {
  std::vector<std::string> names;
  for (const auto& m : monitors) {
    if (m["status"] == "violated") {
      names.push_back(m["record"].get<std::string>() + ":" + m["name"].get<std::string>());
    }
  }
  return names;
}

}  // namespace

RunOutcome execute(const ResolvedRun& run) {
  const auto& c = run.config;
  std::filesystem::create_directories(c.output_dir);
  const double tol = c.sweep_tol.value_or(c.tol);

  ojson summary;
  summary["problem"] = problem_json(run);
  summary["mode"] = to_string(c.mode);
  summary["seed"] = c.seed;
  summary["x0"] = vector_json(run.x0);
  summary["schedule"] = {{"name", run.schedule.name()},
                         {"delta", run.schedule.delta()},
                         {"eps", run.schedule.eps()},
                         {"beta", run.schedule.beta()}};
  ojson monitors = ojson::array();
  RunOutcome outcome;

  if (c.mode != Mode::discrete) {
    const TrajectoryRecord record = integrate(run.problem, run.schedule, run.x0, c.integrator);
    write_with(c.output_dir / "trajectory.csv",
               [&](std::ostream& os) { write_trajectory_csv(os, record); });
    const auto& last = record.samples.back();
    ojson j;
    j["method"] = to_string(c.integrator.method);
    j["h"] = c.integrator.h;
    j["horizon"] = c.integrator.horizon;
    j["samples"] = record.samples.size();
    j["final_time"] = last.t;
    j["final_x"] = vector_json(last.x);
    j["final_z"] = vector_json(last.z);
    j["final_residual"] = last.residual;
    j["final_dist_to_solution"] =
        last.dist_to_solution ? ojson(*last.dist_to_solution) : ojson(nullptr);
    j["gamma_integral"] = record.ergodic.weight();
    j["ergodic_point"] = vector_json(ergodic_point(record));
    summary["continuous"] = j;
    continuous_monitors(run, record, monitors);

    std::vector<std::pair<double, double>> series;
    for (const auto& s : record.samples) {
      series.emplace_back(s.t, s.residual);
    }
    outcome.final_residual = last.residual;
    outcome.time_to_tol = first_below(series, tol);
  }

  if (c.mode != Mode::continuous) {
    const IterateRecord record =
        run_tseng(run.problem, GammaSequence(run.schedule), run.x0, c.max_iter, c.tol);
    write_with(c.output_dir / "iterates.csv",
               [&](std::ostream& os) { write_iterates_csv(os, record); });
    const auto& last = record.iterates.back();
    ojson j;
    j["iterations"] = record.iterates.size();
    j["converged"] = record.converged;
    j["tol"] = c.tol;
    j["final_x"] = vector_json(record.final_x);
    j["final_residual"] = last.residual;
    j["ergodic_point"] = vector_json(discrete_ergodic_point(record));
    summary["discrete"] = j;
    discrete_monitors(run, record, monitors);

    if (c.mode == Mode::discrete) {
      std::vector<std::pair<double, double>> series;
      for (const auto& it : record.iterates) {
        series.emplace_back(static_cast<double>(it.n), it.residual);
      }
      outcome.final_residual = last.residual;
      outcome.time_to_tol = first_below(series, tol);
    }
  }

  if (c.mode == Mode::both) {
    const ojson report = coincidence_report(run);
    write_text(c.output_dir / "coincidence.json", report.dump(2) + "\n");
    summary["coincidence"] = report;
  }

  outcome.violations = count_violations(monitors);
  summary["monitors"] = monitors;
  write_text(c.output_dir / "summary.json", summary.dump(2) + "\n");
  return outcome;
}

int cmd_solve(const std::filesystem::path& config_path, const CommandContext& ctx) {
  try {
    const ResolvedRun run = resolve(load_config(config_path));
    const RunOutcome outcome = execute(run);
    ctx.out << "wrote " << run.config.output_dir.string() << " (final residual "
            << format_double(outcome.final_residual) << ", " << outcome.violations
            << " monitor violation" << (outcome.violations == 1 ? "" : "s") << ")\n";
    if (outcome.violations > 0) {
      std::ifstream is(run.config.output_dir / "summary.json");
      const auto summary = ojson::parse(is);
      for (const auto& name : violated_names(summary["monitors"])) {
        ctx.err << "violated: " << name << '\n';
      }
      if (ctx.strict) {
        return kExitViolation;
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    ctx.err << "error: " << e.what() << '\n';
  } catch (const DivergenceError& e) {
    ctx.err << "error: " << e.what() << " (last finite state at t=" << e.last_good_time()
            << ")\n";
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

int cmd_check(const std::string& suite, std::uint64_t seed, const CommandContext& ctx) {
  std::vector<SuiteResult> results;
  try {
    results = run_checks(suite, seed);
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitError;
  }
  print_check_table(ctx.out, results);
  std::size_t failures = 0;
  for (const auto& r : results) {
    failures += r.failures;
    for (const auto& m : r.messages) {
      ctx.err << r.suite << ": " << m << '\n';
    }
  }
  return failures == 0 ? kExitOk : kExitError;
}

int cmd_sweep(const std::filesystem::path& config_path, const std::string& param,
              const std::vector<double>& values, const CommandContext& ctx, unsigned workers) {
  std::vector<ResolvedRun> runs;
  std::filesystem::path base;
  try {
    if (values.empty()) {
      throw ConfigError("values", "sweep needs at least one value");
    }
    const ConfigDocument doc = ConfigDocument::from_file(config_path);
    base = doc.to_run_config().output_dir;
    for (std::size_t k = 0; k < values.size(); ++k) {
      ConfigDocument entry = doc;
      entry.set_number(param, values[k]);
      RunConfig config = entry.to_run_config();
      std::ostringstream dir;
      dir << "run_" << std::setw(3) << std::setfill('0') << k;
      config.output_dir = base / dir.str();
      runs.push_back(resolve(config));
    }
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitError;
  }

  std::vector<RunOutcome> outcomes(runs.size());
  std::vector<std::string> errors(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < runs.size(); k = next++) {
      try {
        outcomes[k] = execute(runs[k]);
      } catch (const std::exception& e) {
        errors[k] = e.what();
        outcomes[k].final_residual = NAN;
      }
    }
  };
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }

  std::ostringstream csv;
  csv << "value,final_residual,time_to_tol\n";
  std::size_t failed = 0;
  std::size_t violations = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    csv << format_double(values[k]) << ',' << format_double(outcomes[k].final_residual) << ','
        << (outcomes[k].time_to_tol ? format_double(*outcomes[k].time_to_tol) : "") << '\n';
    if (!errors[k].empty()) {
      ++failed;
      ctx.err << "error: " << param << '=' << format_double(values[k]) << ": " << errors[k]
              << '\n';
    }
    violations += outcomes[k].violations;
  }
  try {
    std::filesystem::create_directories(base);
    write_text(base / "sweep.csv", csv.str());
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitError;
  }
  ctx.out << "wrote " << (base / "sweep.csv").string() << " (" << runs.size() << " runs, "
          << violations << " monitor violations)\n";
  if (failed > 0) {
    return kExitError;
  }
  return (ctx.strict && violations > 0) ? kExitViolation : kExitOk;
}

}  // namespace fbf::app
