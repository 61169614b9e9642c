#include "fbf/problem.hpp"

#include <utility>

namespace fbf {

const char* to_string(Source s) {
  switch (s) {
    case Source::closed_form:
      return "closed-form";
    case Source::oracle:
      return "oracle";
    case Source::none:
      break;
  }
  return "none";
}

ProblemInstance::ProblemInstance(std::string name, MaximalOperator a, LipschitzOperator b,
                                 Eigen::Index dimension)
    : params(Params::object()),
      name_(std::move(name)),
      a_(std::move(a)),
      b_(std::move(b)),
      dimension_(dimension) {
  if (dimension_ < 1) {
    throw ConstructionError("problem '" + name_ + "': dimension must be at least 1");
  }
  if (!b_.monotone()) {
    throw ConstructionError("problem '" + name_ + "': operator B is not monotone");
  }
}

void ProblemInstance::set_rho(double rho, Source source) {
  if (!(rho > 0)) {
    throw ConstructionError("problem '" + name_ + "': rho must be positive");
  }
  const double declared = a_.strong_modulus() + b_.strong_modulus();
  if (rho > declared * (1 + 1e-12) + 1e-15) {
    throw ConstructionError("problem '" + name_ + "': rho exceeds rho_A + rho_B");
  }
  rho_ = rho;
  certification_.rho = source;
}

void ProblemInstance::set_known_solution(Vector x, Source source) {
  require_dimension(x, dimension_, "known solution");
  require_finite(x, "known solution");
  known_solution_ = std::move(x);
  certification_.solution = source;
}

}  // namespace fbf
