#pragma once

#include "fbf/params.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace fbf {

/// Step-size schedule γ: [0, ∞) → (0, β) with declared bounds
/// δ ≤ γ(t) ≤ β − ε and, when known, an analytic derivative.
class StepSchedule {
 public:
  using Fn = std::function<double(double)>;

  struct Bounds {
    double delta = 0;
    double eps = 0;
    double beta = 0;
    std::optional<double> deriv_bound;
  };

  /// `derivative` may be empty; the schedule is then treated as merely
  /// measurable and derivative-based monitors report inapplicable.
  StepSchedule(std::string name, Fn eval, Fn derivative, Bounds bounds);

  double operator()(double t) const { return (*eval_)(t); }
  double eval(double t) const { return (*eval_)(t); }

  bool has_derivative() const { return static_cast<bool>(*derivative_); }
  std::optional<double> derivative(double t) const;

  double delta() const { return bounds_.delta; }
  double eps() const { return bounds_.eps; }
  double beta() const { return bounds_.beta; }
  std::optional<double> deriv_bound() const { return bounds_.deriv_bound; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::shared_ptr<const Fn> eval_;
  std::shared_ptr<const Fn> derivative_;
  Bounds bounds_;
};

namespace schedules {

StepSchedule constant(double value, double beta);
/// mid + amp·sin(2πt/period) with mid = (lo+hi)/2, amp = (hi−lo)/2.
StepSchedule sinusoidal(double lo, double hi, double period, double beta);
/// Linear from `start` at t=0 to `end` at t=duration, constant afterwards.
StepSchedule ramp(double start, double end, double duration, double beta);

}  // namespace schedules

/// constant{value}, sinusoidal{lo,hi,period}, ramp{start,end,duration}.
StepSchedule schedule_catalog(std::string_view name, const Params& params, double beta);

}  // namespace fbf
