#pragma once

#include "fbf/discrete.hpp"
#include "fbf/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fbf {

/// Outcome of one monitor. `worst_margin` is the largest observed excess of
/// the checked quantity over its bound (≤ tolerance when `holds`), and
/// `location` is the t (or n) where it occurred.
struct MonitorVerdict {
  std::string name;
  bool applicable = true;
  bool holds = true;
  double worst_margin = 0;
  double location = 0;
  std::optional<double> value;
  std::string detail;

  bool violated() const { return applicable && !holds; }
};

/// ‖x − x̄‖ nonincreasing along the samples, up to `slack` per step.
MonitorVerdict fejer_monitor(const TrajectoryRecord& record, const Vector& xbar,
                             double slack = 1e-8);
MonitorVerdict fejer_monitor(const IterateRecord& record, const Vector& xbar,
                             double slack = 1e-8);

/// I(T) = ∫₀ᵀ (1 − γ/β)‖x − z‖² dt by the trapezoid over the samples, with
/// ‖x − z‖ read as residual·γ. With x̄ the bound is ‖x(0) − x̄‖²/2 + 1e-6;
/// without it the monitor holds iff the second-half increment of I is at most
/// half of the first-half increment.
MonitorVerdict residual_integral_monitor(const TrajectoryRecord& record,
                                         const StepSchedule& schedule,
                                         const std::optional<Vector>& xbar);

/// 2ργ(β − γ)/(βργ + β − γ).
double decay_integrand(double rho, double beta, double gamma);

/// Constant-step exponent 2ρδε/(βρ(β − ε) + β − δ).
double constant_step_rate(double rho, double beta, double delta, double eps);

struct EnvelopeOptions {
  double rel_tol = 1e-2;
  double abs_tol = 0;
};

struct EnvelopeReport {
  std::vector<double> times;
  std::vector<double> measured;  ///< ‖x(t) − x̄‖²
  std::vector<double> envelope;  ///< ‖x(0) − x̄‖²·exp(−∫₀ᵗ integrand)
  std::vector<std::pair<double, double>> violations;  ///< (t, measured − envelope)
  double rel_tol = 1e-2;
  double abs_tol = 0;

  bool holds() const { return violations.empty(); }
};

/// Exponential envelope for a ρ-strongly monotone A + B. The exponent is
/// integrated by the trapezoid at the record's integrator step.
EnvelopeReport exponential_envelope(const TrajectoryRecord& record, const StepSchedule& schedule,
                                    double rho, const Vector& xbar,
                                    const EnvelopeOptions& options = {});

MonitorVerdict envelope_verdict(const EnvelopeReport& report);

using ObjectiveFn = std::function<double(const Vector&)>;

/// (f+h)(ζ) ≤ (f+h)(x) + ‖x₀ − x‖²/(2Γ) + 1e-9(1 + |(f+h)(x)|) for every probe x
/// and every recorded time with Γ > 0. Samples whose ζ lies outside dom f
/// are skipped; if none remain the verdict is inapplicable.
MonitorVerdict ergodic_objective_monitor(const TrajectoryRecord& record,
                                         const ObjectiveFn& objective,
                                         std::span<const Vector> probes);
MonitorVerdict ergodic_objective_monitor(const IterateRecord& record,
                                         const ObjectiveFn& objective,
                                         std::span<const Vector> probes);

struct LipschitzProbeReport {
  double max_ratio = 0;
  std::size_t pairs = 0;
};

/// max ‖f(γ,x) − f(γ,y)‖/‖x − y‖ over random pairs in [−radius, radius]^n.
/// Half the pairs are far apart, half are close (‖x − y‖ ~ 1e-3·radius).
LipschitzProbeReport lipschitz_probe(const ProblemInstance& problem,
                                     std::span<const double> gammas, std::size_t n_pairs,
                                     double radius, std::uint64_t seed);

/// (√((1 + γ̇/γ)² + γ²/β²) + (γ/β)√(1 + γ²/β²)).
double zdot_bound_coefficient(double gamma, double gamma_dot, double beta);

/// Central-difference ‖ż‖ against the bound above times ‖x − z‖, relative
/// slack 5e-2 and absolute floor 1e-10. Inapplicable when the schedule has no
/// analytic derivative or samples are sparser than 10 integrator steps.
MonitorVerdict zdot_bound_monitor(const TrajectoryRecord& record, const StepSchedule& schedule);

/// Recomputes z = J_{γA}(x − γBx) at each sample; ‖z_rec − z‖ ≤ tol.
MonitorVerdict inclusion_monitor(const ProblemInstance& problem, const TrajectoryRecord& record,
                                 double tol = 1e-12);

/// ‖f(γ,x)‖ ≤ √(1 + γ²/β²)‖x − z‖ + 1e-10 at each sample.
MonitorVerdict velocity_monitor(const ProblemInstance& problem, const TrajectoryRecord& record);

}  // namespace fbf
