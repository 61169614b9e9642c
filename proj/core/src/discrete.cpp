#include "fbf/discrete.hpp"

#include "fbf/dynamics.hpp"

#include <cmath>
#include <string>

namespace fbf {

TsengStep tseng_step(const ProblemInstance& problem, double gamma, const Vector& x) {
  if (!(gamma > 0) || !(gamma < problem.beta())) {
    throw ParameterError("step size " + std::to_string(gamma) + " outside (0, beta=" +
                         std::to_string(problem.beta()) + ")");
  }
  require_dimension(x, problem.dimension(), "tseng step");
  const Vector bx = problem.b()(x);
  TsengStep out;
  out.z = problem.a().resolvent(gamma, x - gamma * bx);
  out.x_next = out.z + gamma * (bx - problem.b()(out.z));
  return out;
}

double GammaSequence::at(std::size_t n) const {
  if (const auto* list = std::get_if<std::vector<double>>(&source_)) {
    if (n >= list->size()) {
      throw ParameterError("step size list exhausted at n = " + std::to_string(n));
    }
    return (*list)[n];
  }
  return std::get<StepSchedule>(source_)(static_cast<double>(n));
}

Iterate& IterateRecord::record(double gamma, const Vector& x, const Vector& z) {
  if (iterates.empty()) {
    ergodic_num = Vector::Zero(z.size());
    ergodic_den = 0;
  }
  ergodic_num += gamma * z;
  ergodic_den += gamma;

  Iterate it;
  it.n = iterates.size();
  it.x = x;
  it.z = z;
  it.gamma = gamma;
  it.residual = (x - z).norm() / gamma;
  it.gamma_sum = ergodic_den;
  it.ergodic = ergodic_num / ergodic_den;
  iterates.push_back(std::move(it));
  return iterates.back();
}

IterateRecord run_tseng(const ProblemInstance& problem, const GammaSequence& gammas,
                        const Vector& x0, std::size_t max_iter, double tol) {
  if (max_iter < 1) {
    throw ParameterError("max_iter must be at least 1");
  }
  if (!(tol >= 0)) {
    throw ParameterError("tol must be nonnegative");
  }
  require_dimension(x0, problem.dimension(), "initial state");
  require_finite(x0, "initial state");

  IterateRecord rec;
  Vector x = x0;
  for (std::size_t n = 0; n < max_iter; ++n) {
    const double gamma = gammas.at(n);
    TsengStep step = tseng_step(problem, gamma, x);
    Iterate& it = rec.record(gamma, x, step.z);
    if (problem.known_solution()) {
      it.dist_to_solution = (x - *problem.known_solution()).norm();
    }
    if (problem.has_objective()) {
      it.objective_at_z = problem.objective()(step.z);
    }
    if (it.residual <= tol) {
      rec.converged = true;
      break;
    }
    if (!step.x_next.allFinite() || step.x_next.norm() > kDivergenceNorm) {
      throw DivergenceError("iteration diverged after n = " + std::to_string(n),
                            static_cast<double>(n));
    }
    x = std::move(step.x_next);
  }
  rec.final_x = x;
  return rec;
}

Vector discrete_ergodic_point(const IterateRecord& record) {
  if (record.iterates.empty() || !(record.ergodic_den > 0)) {
    throw RecordError("ergodic point of an empty iterate record");
  }
  return record.ergodic_num / record.ergodic_den;
}

}  // namespace fbf
