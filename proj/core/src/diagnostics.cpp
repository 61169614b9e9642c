#include "fbf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fbf {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename Sample>
double distance_to(const Sample& s, const Vector& xbar) {
  if (s.x.size() > 0) {
    return (s.x - xbar).norm();
  }
  if (s.dist_to_solution) {
    return *s.dist_to_solution;
  }
  throw RecordError("sample carries neither a state nor a distance to the solution");
}

MonitorVerdict fejer_from_distances(const std::vector<std::pair<double, double>>& series,
                                    double slack) {
  MonitorVerdict v;
  v.name = "fejer";
  if (series.size() < 2) {
    v.detail = "fewer than two samples";
    return v;
  }
  v.worst_margin = kNegInf;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double increase = series[k].second - series[k - 1].second;
    if (increase > v.worst_margin) {
      v.worst_margin = increase;
      v.location = series[k].first;
    }
  }
  v.holds = v.worst_margin <= slack;
  v.value = series.back().second;
  v.detail = v.holds ? "distance to solution nonincreasing"
                     : "distance to solution increased by " + std::to_string(v.worst_margin);
  return v;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& g, std::size_t end) {
  double total = 0;
  for (std::size_t k = 1; k < end; ++k) {
    total += 0.5 * (t[k] - t[k - 1]) * (g[k] + g[k - 1]);
  }
  return total;
}

struct ErgodicPoint {
  double location;
  double weight;
  const std::optional<Vector>* zeta;
};

MonitorVerdict ergodic_check(const std::vector<ErgodicPoint>& points, const Vector& x0,
                             const ObjectiveFn& objective, std::span<const Vector> probes) {
  MonitorVerdict v;
  v.name = "ergodic_objective";
  std::vector<std::pair<double, double>> probe_values;  // (f(x), ‖x0 − x‖²)
  for (const auto& p : probes) {
    const double fx = objective(p);
    if (std::isfinite(fx)) {
      probe_values.emplace_back(fx, (x0 - p).squaredNorm());
    }
  }
  std::size_t checked = 0;
  std::size_t outside = 0;
  v.worst_margin = kNegInf;
  for (const auto& pt : points) {
    if (!(pt.weight > 0) || !pt.zeta->has_value()) {
      continue;
    }
    const double fz = objective(**pt.zeta);
    if (!std::isfinite(fz)) {
      ++outside;
      continue;
    }
    ++checked;
    for (const auto& [fx, dist2] : probe_values) {
      const double excess =
          fz - fx - dist2 / (2 * pt.weight) - 1e-9 * (1 + std::abs(fx));
      if (excess > v.worst_margin) {
        v.worst_margin = excess;
        v.location = pt.location;
      }
    }
  }
  if (checked == 0 || probe_values.empty()) {
    v.applicable = false;
    v.worst_margin = 0;
    v.detail = probe_values.empty() ? "no probe point inside dom f"
                                    : "ergodic point never inside dom f";
    return v;
  }
  v.holds = v.worst_margin <= 0;
  v.detail = std::to_string(checked) + " samples checked, " + std::to_string(outside) +
             " outside dom f";
  return v;
}

}  // namespace

MonitorVerdict fejer_monitor(const TrajectoryRecord& record, const Vector& xbar, double slack) {
  std::vector<std::pair<double, double>> series;
  series.reserve(record.samples.size());
  for (const auto& s : record.samples) {
    series.emplace_back(s.t, distance_to(s, xbar));
  }
  return fejer_from_distances(series, slack);
}

MonitorVerdict fejer_monitor(const IterateRecord& record, const Vector& xbar, double slack) {
  std::vector<std::pair<double, double>> series;
  series.reserve(record.iterates.size());
  for (const auto& it : record.iterates) {
    series.emplace_back(static_cast<double>(it.n), distance_to(it, xbar));
  }
  return fejer_from_distances(series, slack);
}

MonitorVerdict residual_integral_monitor(const TrajectoryRecord& record,
                                         const StepSchedule& schedule,
                                         const std::optional<Vector>& xbar) {
  MonitorVerdict v;
  v.name = "residual_integral";
  const auto& samples = record.samples;
  if (samples.size() < 2) {
    v.applicable = false;
    v.detail = "fewer than two samples";
    return v;
  }
  const double beta = schedule.beta();
  std::vector<double> t(samples.size());
  std::vector<double> g(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    const double gap = s.residual * s.gamma;
    t[k] = s.t;
    g[k] = (1 - s.gamma / beta) * gap * gap;
  }
  const double total = trapezoid(t, g, samples.size());
  v.value = total;
  v.location = t.back();

  if (xbar) {
    const double d0 = distance_to(samples.front(), *xbar);
    v.worst_margin = total - 0.5 * d0 * d0;
    v.holds = v.worst_margin <= 1e-6;
    v.detail = "I(T) = " + std::to_string(total) + ", bound " + std::to_string(0.5 * d0 * d0);
    return v;
  }

  if (samples.size() < 3) {
    v.applicable = false;
    v.detail = "too few samples for an increment test";
    return v;
  }
  const double half_time = 0.5 * (t.front() + t.back());
  std::size_t mid = 1;
  while (mid + 1 < t.size() && t[mid] < half_time) {
    ++mid;
  }
  const double first = trapezoid(t, g, mid + 1);
  const double second = total - first;
  v.worst_margin = second - 0.5 * first;
  v.holds = v.worst_margin <= 1e-14;
  v.detail = "increments " + std::to_string(first) + " then " + std::to_string(second);
  return v;
}

double decay_integrand(double rho, double beta, double gamma) {
  if (std::isinf(beta)) {
    return 2 * rho * gamma / (rho * gamma + 1);
  }
  return 2 * rho * gamma * (beta - gamma) / (beta * rho * gamma + beta - gamma);
}

double constant_step_rate(double rho, double beta, double delta, double eps) {
  return 2 * rho * delta * eps / (beta * rho * (beta - eps) + beta - delta);
}

EnvelopeReport exponential_envelope(const TrajectoryRecord& record, const StepSchedule& schedule,
                                    double rho, const Vector& xbar,
                                    const EnvelopeOptions& options) {
  if (!(rho > 0)) {
    throw ParameterError("envelope requires rho > 0");
  }
  EnvelopeReport report;
  const auto& samples = record.samples;
  if (samples.empty()) {
    return report;
  }
  const double beta = schedule.beta();
  const double d0 = distance_to(samples.front(), xbar);
  double exponent = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    if (k > 0) {
      const double t0 = samples[k - 1].t;
      const double span = s.t - t0;
      const double step = record.step > 0 ? record.step : span;
      const auto pieces = std::max(1LL, std::llround(span / step));
      const double dt = span / static_cast<double>(pieces);
      double prev = decay_integrand(rho, beta, schedule(t0));
      for (long long i = 1; i <= pieces; ++i) {
        const double ti = i == pieces ? s.t : t0 + static_cast<double>(i) * dt;
        const double cur = decay_integrand(rho, beta, schedule(ti));
        exponent += 0.5 * dt * (prev + cur);
        prev = cur;
      }
    }
    const double d = distance_to(s, xbar);
    const double measured = d * d;
    const double env = d0 * d0 * std::exp(-exponent);
    report.times.push_back(s.t);
    report.measured.push_back(measured);
    report.envelope.push_back(env);
    if (measured > env * (1 + options.rel_tol) + options.abs_tol) {
      report.violations.emplace_back(s.t, measured - env);
    }
  }
  report.rel_tol = options.rel_tol;
  report.abs_tol = options.abs_tol;
  return report;
}

MonitorVerdict envelope_verdict(const EnvelopeReport& report) {
  MonitorVerdict v;
  v.name = "exponential_envelope";
  if (report.times.empty()) {
    v.applicable = false;
    v.detail = "empty record";
    return v;
  }
  v.worst_margin = kNegInf;
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    const double excess =
        report.measured[k] - report.envelope[k] * (1 + report.rel_tol) - report.abs_tol;
    if (excess > v.worst_margin) {
      v.worst_margin = excess;
      v.location = report.times[k];
    }
  }
  v.holds = report.holds();
  v.value = report.measured.back();
  v.detail = std::to_string(report.violations.size()) + " violations";
  return v;
}

MonitorVerdict ergodic_objective_monitor(const TrajectoryRecord& record,
                                         const ObjectiveFn& objective,
                                         std::span<const Vector> probes) {
  if (record.samples.empty() || record.samples.front().x.size() == 0) {
    throw RecordError("ergodic monitor needs the initial state");
  }
  std::vector<ErgodicPoint> points;
  points.reserve(record.samples.size());
  for (const auto& s : record.samples) {
    points.push_back({s.t, s.gamma_integral, &s.ergodic});
  }
  return ergodic_check(points, record.samples.front().x, objective, probes);
}

MonitorVerdict ergodic_objective_monitor(const IterateRecord& record,
                                         const ObjectiveFn& objective,
                                         std::span<const Vector> probes) {
  if (record.iterates.empty() || record.iterates.front().x.size() == 0) {
    throw RecordError("ergodic monitor needs the initial state");
  }
  std::vector<ErgodicPoint> points;
  points.reserve(record.iterates.size());
  for (const auto& it : record.iterates) {
    points.push_back({static_cast<double>(it.n), it.gamma_sum, &it.ergodic});
  }
  return ergodic_check(points, record.iterates.front().x, objective, probes);
}

LipschitzProbeReport lipschitz_probe(const ProblemInstance& problem,
                                     std::span<const double> gammas, std::size_t n_pairs,
                                     double radius, std::uint64_t seed) {
  if (n_pairs < 1) {
    throw ParameterError("lipschitz probe needs at least one pair");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Eigen::Index n = problem.dimension();
  auto draw = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = unit(rng);
    }
    return v;
  };

  LipschitzProbeReport report;
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const Vector x = radius * draw();
    const Vector y = (p % 2 == 0) ? Vector(radius * draw()) : Vector(x + 1e-3 * radius * draw());
    const double gap = (x - y).norm();
    if (!(gap > 0)) {
      continue;
    }
    for (const double gamma : gammas) {
      const Vector fx = fbf_vector_field(problem, gamma, x).dx;
      const Vector fy = fbf_vector_field(problem, gamma, y).dx;
      report.max_ratio = std::max(report.max_ratio, (fx - fy).norm() / gap);
    }
    ++report.pairs;
  }
  return report;
}

double zdot_bound_coefficient(double gamma, double gamma_dot, double beta) {
  const double r = gamma / beta;
  const double lead = 1 + gamma_dot / gamma;
  return std::sqrt(lead * lead + r * r) + r * std::sqrt(1 + r * r);
}

MonitorVerdict zdot_bound_monitor(const TrajectoryRecord& record, const StepSchedule& schedule) {
  MonitorVerdict v;
  v.name = "zdot_bound";
  if (!schedule.has_derivative()) {
    v.applicable = false;
    v.detail = "schedule has no analytic derivative";
    return v;
  }
  const auto& s = record.samples;
  if (s.size() < 3 || s.front().z.size() == 0) {
    v.applicable = false;
    v.detail = "need at least three samples with states";
    return v;
  }
  if (record.step > 0) {
    for (std::size_t k = 1; k < s.size(); ++k) {
      if (s[k].t - s[k - 1].t > 10 * record.step * (1 + 1e-9)) {
        v.applicable = false;
        v.detail = "samples sparser than 10 integrator steps";
        return v;
      }
    }
  }
  v.worst_margin = kNegInf;
  const double beta = schedule.beta();
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double zdot = (s[k + 1].z - s[k - 1].z).norm() / (s[k + 1].t - s[k - 1].t);
    const double coef = zdot_bound_coefficient(s[k].gamma, *schedule.derivative(s[k].t), beta);
    const double bound = coef * (s[k].x - s[k].z).norm() * (1 + 5e-2) + 1e-10;
    const double excess = zdot - bound;
    if (excess > v.worst_margin) {
      v.worst_margin = excess;
      v.location = s[k].t;
    }
  }
  v.holds = v.worst_margin <= 0;
  return v;
}

MonitorVerdict inclusion_monitor(const ProblemInstance& problem, const TrajectoryRecord& record,
                                 double tol) {
  MonitorVerdict v;
  v.name = "inclusion";
  if (record.samples.empty() || record.samples.front().x.size() == 0) {
    v.applicable = false;
    v.detail = "record carries no states";
    return v;
  }
  for (const auto& s : record.samples) {
    const Vector z = fbf_vector_field(problem, s.gamma, s.x).z;
    const double gap = (z - s.z).norm();
    if (gap > v.worst_margin) {
      v.worst_margin = gap;
      v.location = s.t;
    }
  }
  v.holds = v.worst_margin <= tol;
  return v;
}

MonitorVerdict velocity_monitor(const ProblemInstance& problem, const TrajectoryRecord& record) {
  MonitorVerdict v;
  v.name = "velocity";
  if (record.samples.empty() || record.samples.front().x.size() == 0) {
    v.applicable = false;
    v.detail = "record carries no states";
    return v;
  }
  v.worst_margin = kNegInf;
  const double beta = problem.beta();
  for (const auto& s : record.samples) {
    const FieldEval f = fbf_vector_field(problem, s.gamma, s.x);
    const double r = s.gamma / beta;
    const double excess = f.dx.norm() - std::sqrt(1 + r * r) * (s.x - f.z).norm();
    if (excess > v.worst_margin) {
      v.worst_margin = excess;
      v.location = s.t;
    }
  }
  v.holds = v.worst_margin <= 1e-10;
  return v;
}

}  // namespace fbf
