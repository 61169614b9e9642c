#pragma once

#include "fbf/problem.hpp"
#include "fbf/schedule.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace fbf {

struct TsengStep {
  Vector x_next;
  Vector z;
};

/// One iteration of Tseng's method:
///   z_n     = J_{γ_n A}(x_n − γ_n B x_n)
///   x_{n+1} = z_n + γ_n (B x_n − B z_n).
TsengStep tseng_step(const ProblemInstance& problem, double gamma, const Vector& x);

/// Step sizes γ_n, either listed explicitly or sampled from a schedule at t = n.
class GammaSequence {
 public:
  GammaSequence(StepSchedule schedule) : source_(std::move(schedule)) {}  // NOLINT
  GammaSequence(std::vector<double> values) : source_(std::move(values)) {}  // NOLINT

  /// Throws ParameterError when an explicit list is exhausted.
  double at(std::size_t n) const;

 private:
  std::variant<StepSchedule, std::vector<double>> source_;
};

struct Iterate {
  std::size_t n = 0;
  Vector x;  ///< x_n; empty when read back from CSV
  Vector z;  ///< z_n
  double gamma = 0;
  double residual = 0;  ///< ‖x_n − z_n‖/γ_n
  std::optional<double> dist_to_solution;
  std::optional<double> objective_at_z;
  double gamma_sum = 0;           ///< Γ_n = Σ_{k≤n} γ_k
  std::optional<Vector> ergodic;  ///< ζ_n
};

struct IterateRecord {
  std::vector<Iterate> iterates;
  Vector final_x;  ///< the x after the last recorded iterate
  Vector ergodic_num;
  double ergodic_den = 0;
  bool converged = false;

  /// Appends (x_n, z_n) with step γ_n and updates the ergodic sums.
  Iterate& record(double gamma, const Vector& x, const Vector& z);
};

/// Runs Tseng's iteration from x0 until ‖x_n − z_n‖/γ_n ≤ tol or max_iter
/// iterations have been taken.
IterateRecord run_tseng(const ProblemInstance& problem, const GammaSequence& gammas,
                        const Vector& x0, std::size_t max_iter, double tol);

/// ζ_n = Σγ_k z_k / Σγ_k. Throws RecordError on an empty record.
Vector discrete_ergodic_point(const IterateRecord& record);

}  // namespace fbf
