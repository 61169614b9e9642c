#include "fbf/dynamics.hpp"

#include <cmath>
#include <string>

namespace fbf {
namespace {

TrajectorySample make_sample(const ProblemInstance& problem, double t, double gamma,
                             const Vector& x, const Vector& z, const ErgodicAccumulator& acc) {
  TrajectorySample s;
  s.t = t;
  s.x = x;
  s.z = z;
  s.gamma = gamma;
  s.residual = (x - z).norm() / gamma;
  if (problem.known_solution()) {
    s.dist_to_solution = (x - *problem.known_solution()).norm();
  }
  if (problem.has_objective()) {
    s.objective_at_z = problem.objective()(z);
  }
  s.gamma_integral = acc.weight();
  if (acc.weight() > 0) {
    s.ergodic = acc.point();
  }
  return s;
}

void check_divergence(const Vector& x, double last_good_t) {
  if (!x.allFinite() || x.norm() > kDivergenceNorm) {
    throw DivergenceError("trajectory diverged after t = " + std::to_string(last_good_t),
                          last_good_t);
  }
}

}  // namespace

FieldEval fbf_vector_field(const ProblemInstance& problem, double gamma, const Vector& x) {
  if (!(gamma > 0) || !(gamma < problem.beta())) {
    throw ParameterError("step size " + std::to_string(gamma) + " outside (0, beta=" +
                         std::to_string(problem.beta()) + ")");
  }
  require_dimension(x, problem.dimension(), "vector field");
  const Vector bx = problem.b()(x);
  FieldEval out;
  out.z = problem.a().resolvent(gamma, x - gamma * bx);
  const Vector bz = problem.b()(out.z);
  out.dx = out.z - x + gamma * (bx - bz);
  return out;
}

void ErgodicAccumulator::add(double t, double gamma, const Vector& z) {
  if (count_ == 0) {
    sum_ = Vector::Zero(z.size());
  } else {
    if (!(t > last_t_)) {
      throw RecordError("ergodic accumulation requires strictly increasing times");
    }
    const double half = 0.5 * (t - last_t_);
    sum_ += half * (last_gamma_ * last_z_ + gamma * z);
    weight_ += half * (last_gamma_ + gamma);
  }
  last_t_ = t;
  last_gamma_ = gamma;
  last_z_ = z;
  ++count_;
}

Vector ErgodicAccumulator::point() const {
  if (count_ < 2 || !(weight_ > 0)) {
    throw RecordError("ergodic point needs at least two accumulated points");
  }
  return sum_ / weight_;
}

const char* to_string(Method m) { return m == Method::euler ? "euler" : "rk4"; }

Method parse_method(std::string_view name) {
  if (name == "euler") {
    return Method::euler;
  }
  if (name == "rk4") {
    return Method::rk4;
  }
  throw ParameterError("unknown integration method '" + std::string(name) + "'");
}

Vector ergodic_point(const TrajectoryRecord& record) { return record.ergodic.point(); }

TrajectoryRecord integrate(const ProblemInstance& problem, const StepSchedule& schedule,
                           const Vector& x0, const IntegrateOptions& options) {
  const double h = options.h;
  if (!(h > 0) || !std::isfinite(h)) {
    throw ParameterError("integration step h must be positive");
  }
  if (!(options.horizon >= h)) {
    throw ParameterError("horizon must be at least one step");
  }
  if (!(options.sample_every > 0)) {
    throw ParameterError("sample_every must be positive");
  }
  const double beta = problem.beta();
  if (std::abs(schedule.beta() - beta) > 1e-12 * std::max(1.0, std::abs(beta)) &&
      !(std::isinf(beta) && std::isinf(schedule.beta()))) {
    throw ParameterError("schedule beta does not match problem beta");
  }
  require_dimension(x0, problem.dimension(), "initial state");
  require_finite(x0, "initial state");

  const auto steps = static_cast<long long>(std::ceil(options.horizon / h - 1e-9));
  const auto stride = std::max(1LL, std::llround(options.sample_every / h));

  TrajectoryRecord record;
  record.step = h;
  record.method = options.method;

  Vector x = x0;
  double gamma = schedule(0.0);
  FieldEval k1 = fbf_vector_field(problem, gamma, x);
  record.ergodic.add(0.0, gamma, k1.z);
  record.samples.push_back(make_sample(problem, 0.0, gamma, x, k1.z, record.ergodic));

  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const bool last = k + 1 == steps;
    const double t_next = last ? options.horizon : static_cast<double>(k + 1) * h;
    const double dt = t_next - t;

    if (options.method == Method::euler) {
      x += dt * k1.dx;
    } else {
      const double t_mid = t + 0.5 * dt;
      const double gamma_mid = schedule(t_mid);
      const Vector k2 = fbf_vector_field(problem, gamma_mid, x + (0.5 * dt) * k1.dx).dx;
      const Vector k3 = fbf_vector_field(problem, gamma_mid, x + (0.5 * dt) * k2).dx;
      const Vector k4 = fbf_vector_field(problem, schedule(t_next), x + dt * k3).dx;
      x += (dt / 6.0) * (k1.dx + 2.0 * k2 + 2.0 * k3 + k4);
    }
    check_divergence(x, t);

    gamma = schedule(t_next);
    k1 = fbf_vector_field(problem, gamma, x);
    record.ergodic.add(t_next, gamma, k1.z);
    if (last || (k + 1) % stride == 0) {
      record.samples.push_back(make_sample(problem, t_next, gamma, x, k1.z, record.ergodic));
    }
  }
  return record;
}

}  // namespace fbf
