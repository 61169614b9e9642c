#include "fbf/schedule.hpp"

#include "fbf/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace fbf {
namespace {

void require_range(double lo, double hi, double beta, const char* what) {
  if (!(beta > 0)) {
    throw ConstructionError(std::string(what) + ": beta must be positive");
  }
  if (!(lo > 0) || !(hi < beta) || !(lo <= hi)) {
    throw ConstructionError(std::string(what) + ": range [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] must lie inside (0, beta=" +
                            std::to_string(beta) + ")");
  }
}

}  // namespace

StepSchedule::StepSchedule(std::string name, Fn eval, Fn derivative, Bounds bounds)
    : name_(std::move(name)),
      eval_(std::make_shared<const Fn>(std::move(eval))),
      derivative_(std::make_shared<const Fn>(std::move(derivative))),
      bounds_(bounds) {
  if (!*eval_) {
    throw ConstructionError("schedule requires an evaluation function");
  }
  if (!(bounds_.eps > 0)) {
    throw ConstructionError("schedule: eps must be positive");
  }
  // β − (β − γ) may round one ulp below γ.
  const double slack = 4 * std::numeric_limits<double>::epsilon() * bounds_.beta;
  require_range(bounds_.delta, bounds_.beta - bounds_.eps + slack, bounds_.beta + slack,
                "schedule");
  if (bounds_.deriv_bound && !(*bounds_.deriv_bound >= 0)) {
    throw ConstructionError("schedule: derivative bound must be nonnegative");
  }
}

std::optional<double> StepSchedule::derivative(double t) const {
  if (!*derivative_) {
    return std::nullopt;
  }
  return (*derivative_)(t);
}

namespace schedules {

StepSchedule constant(double value, double beta) {
  require_range(value, value, beta, "constant schedule");
  return StepSchedule(
      "constant", [value](double) { return value; }, [](double) { return 0.0; },
      {.delta = value, .eps = beta - value, .beta = beta, .deriv_bound = 0.0});
}

StepSchedule sinusoidal(double lo, double hi, double period, double beta) {
  require_range(lo, hi, beta, "sinusoidal schedule");
  if (!(period > 0)) {
    throw ConstructionError("sinusoidal schedule: period must be positive");
  }
  const double mid = 0.5 * (lo + hi);
  const double amp = 0.5 * (hi - lo);
  const double omega = 2 * std::numbers::pi / period;
  return StepSchedule(
      "sinusoidal", [=](double t) { return mid + amp * std::sin(omega * t); },
      [=](double t) { return amp * omega * std::cos(omega * t); },
      {.delta = lo, .eps = beta - hi, .beta = beta, .deriv_bound = amp * omega});
}

StepSchedule ramp(double start, double end, double duration, double beta) {
  require_range(std::min(start, end), std::max(start, end), beta, "ramp schedule");
  if (!(duration > 0)) {
    throw ConstructionError("ramp schedule: duration must be positive");
  }
  const double slope = (end - start) / duration;
  // Right derivative at the kink t = duration.
  return StepSchedule(
      "ramp",
      [=](double t) { return t >= duration ? end : start + slope * std::max(t, 0.0); },
      [=](double t) { return t >= duration ? 0.0 : slope; },
      {.delta = std::min(start, end),
       .eps = beta - std::max(start, end),
       .beta = beta,
       .deriv_bound = std::abs(slope)});
}

}  // namespace schedules

StepSchedule schedule_catalog(std::string_view name, const Params& p, double beta) {
  if (name == "constant") {
    return schedules::constant(params::number(p, "value"), beta);
  }
  if (name == "sinusoidal") {
    return schedules::sinusoidal(params::number(p, "lo"), params::number(p, "hi"),
                                 params::number(p, "period", 2 * std::numbers::pi), beta);
  }
  if (name == "ramp") {
    return schedules::ramp(params::number(p, "start"), params::number(p, "end"),
                           params::number(p, "duration"), beta);
  }
  throw ConstructionError("unknown schedule '" + std::string(name) + "'");
}

}  // namespace fbf
