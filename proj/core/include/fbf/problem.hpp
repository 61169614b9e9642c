#pragma once

#include "fbf/operators.hpp"
#include "fbf/params.hpp"

#include <functional>
#include <optional>
#include <string>

namespace fbf {

enum class Source { closed_form, oracle, none };

const char* to_string(Source s);

/// Where each certified field of a problem came from.
struct Certification {
  Source beta = Source::closed_form;
  Source rho = Source::none;
  Source solution = Source::none;
};

/// The inclusion 0 ∈ Ax + Bx on R^n, with whatever metadata is certified.
class ProblemInstance {
 public:
  using Objective = std::function<double(const Vector& x)>;

  /// β is taken from B. Throws ConstructionError if B is not monotone.
  ProblemInstance(std::string name, MaximalOperator a, LipschitzOperator b, Eigen::Index dimension);

  const std::string& name() const { return name_; }
  const MaximalOperator& a() const { return a_; }
  const LipschitzOperator& b() const { return b_; }
  double beta() const { return b_.beta(); }
  Eigen::Index dimension() const { return dimension_; }

  /// Strong-monotonicity modulus ρ of A + B; must not exceed ρ_A + ρ_B.
  const std::optional<double>& rho() const { return rho_; }
  void set_rho(double rho, Source source);

  /// A certified zero x̄ of A + B.
  const std::optional<Vector>& known_solution() const { return known_solution_; }
  void set_known_solution(Vector x, Source source);

  /// f + h for convex minimization instances (A = ∂f, B = ∇h); +inf off dom f.
  bool has_objective() const { return static_cast<bool>(objective_); }
  const Objective& objective() const { return objective_; }
  void set_objective(Objective objective) { objective_ = std::move(objective); }

  const Certification& certification() const { return certification_; }

  Params params;  ///< construction parameters, echoed into summaries

 private:
  std::string name_;
  MaximalOperator a_;
  LipschitzOperator b_;
  Eigen::Index dimension_;
  std::optional<double> rho_;
  std::optional<Vector> known_solution_;
  Objective objective_;
  Certification certification_;
};

}  // namespace fbf
