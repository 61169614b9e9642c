#pragma once

#include "fbf/problem.hpp"
#include "fbf/schedule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fbf {

struct FieldEval {
  Vector dx;  ///< f(γ, x)
  Vector z;   ///< J_{γA}(x − γBx)
};

/// The forward-backward-forward vector field
///   z  = J_{γA}(x − γBx)
///   dx = z − x + γ(Bx − Bz).
/// Throws ParameterError unless 0 < γ < β.
FieldEval fbf_vector_field(const ProblemInstance& problem, double gamma, const Vector& x);

/// Running value of ∫γ(s)z(s)ds and Γ = ∫γ(s)ds by the trapezoidal rule over
/// the points fed to add().
class ErgodicAccumulator {
 public:
  void add(double t, double gamma, const Vector& z);

  std::size_t count() const { return count_; }
  double weight() const { return weight_; }
  const Vector& weighted_sum() const { return sum_; }

  /// ζ = (∫γz)/Γ. Throws RecordError while Γ is not positive.
  Vector point() const;

 private:
  std::size_t count_ = 0;
  double last_t_ = 0;
  double last_gamma_ = 0;
  Vector last_z_;
  Vector sum_;
  double weight_ = 0;
};

struct TrajectorySample {
  double t = 0;
  Vector x;  ///< empty when the record was read back from CSV
  Vector z;
  double gamma = 0;
  double residual = 0;  ///< ‖x − z‖/γ
  std::optional<double> dist_to_solution;
  std::optional<double> objective_at_z;
  double gamma_integral = 0;      ///< Γ(t)
  std::optional<Vector> ergodic;  ///< ζ(t), present once Γ(t) > 0
};

enum class Method { euler, rk4 };

const char* to_string(Method m);
Method parse_method(std::string_view name);

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  ErgodicAccumulator ergodic;
  double step = 0;  ///< integrator step h; 0 when unknown
  Method method = Method::rk4;
};

/// ζ(T) of the record. Throws RecordError for records with fewer than two
/// accumulated points.
Vector ergodic_point(const TrajectoryRecord& record);

struct IntegrateOptions {
  double horizon = 10;
  Method method = Method::rk4;
  double h = 0.01;
  double sample_every = 0.01;
};

/// Above this norm the state is declared divergent.
inline constexpr double kDivergenceNorm = 1e12;

/// Integrates ẋ = f(γ(t), x), x(0) = x0 on [0, horizon] with a fixed step,
/// recording a sample every `sample_every` (rounded to a whole number of
/// steps) plus the endpoints. Ergodic sums are accumulated at every step.
TrajectoryRecord integrate(const ProblemInstance& problem, const StepSchedule& schedule,
                           const Vector& x0, const IntegrateOptions& options);

}  // namespace fbf
