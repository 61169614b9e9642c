#include "fbf/operators.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace fbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_gamma(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    throw ParameterError("resolvent parameter must be positive and finite, got " +
                         std::to_string(gamma));
  }
}

void require_symmetric(const Matrix& q, const char* what) {
  if (q.rows() != q.cols()) {
    throw ConstructionError(std::string(what) + ": matrix must be square");
  }
  if (!q.allFinite()) {
    throw ConstructionError(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

MaximalOperator::MaximalOperator(ResolventFn resolvent, Traits traits)
    : resolvent_(std::make_shared<const ResolventFn>(std::move(resolvent))),
      traits_(std::make_shared<const Traits>(std::move(traits))) {
  if (!*resolvent_) {
    throw ConstructionError("maximal operator requires a resolvent oracle");
  }
  if (traits_->strong_modulus < 0) {
    throw ConstructionError("strong monotonicity modulus must be nonnegative");
  }
}

Vector MaximalOperator::resolvent(double gamma, const Vector& x) const {
  require_gamma(gamma);
  require_finite(x, "resolvent input");
  return (*resolvent_)(gamma, x);
}

bool MaximalOperator::in_domain(const Vector& x) const {
  return !traits_->domain || traits_->domain(x);
}

double MaximalOperator::potential(const Vector& x) const {
  if (!traits_->potential) {
    throw Error("operator '" + traits_->name + "' has no attached potential");
  }
  return traits_->potential(x);
}

LipschitzOperator::LipschitzOperator(MapFn apply, double beta, bool monotone,
                                     double strong_modulus, std::string name)
    : apply_(std::make_shared<const MapFn>(std::move(apply))),
      beta_(beta),
      monotone_(monotone),
      strong_modulus_(strong_modulus),
      name_(std::move(name)) {
  if (!*apply_) {
    throw ConstructionError("Lipschitz operator requires a map");
  }
  if (!(beta > 0)) {
    throw ConstructionError("Lipschitz operator needs beta > 0");
  }
  if (strong_modulus < 0) {
    throw ConstructionError("strong monotonicity modulus must be nonnegative");
  }
}

LipschitzOperator LipschitzOperator::affine(Matrix m, Vector c, std::string name) {
  require_symmetric(m, "affine operator");
  if (c.size() != m.rows()) {
    throw ConstructionError("affine operator: offset dimension does not match matrix");
  }
  const double norm = spectral_norm(m);
  const double beta = norm > 0 ? 1.0 / norm : kInf;
  const double lambda_min = min_symmetric_eigenvalue(m);
  const bool monotone = lambda_min >= -kPsdTolerance;
  const double rho = std::max(0.0, lambda_min);
  auto apply = [m = std::move(m), c = std::move(c)](const Vector& x) -> Vector {
    return m * x + c;
  };
  return LipschitzOperator(std::move(apply), beta, monotone, rho, std::move(name));
}

LipschitzOperator LipschitzOperator::zero(Eigen::Index n) {
  return affine(Matrix::Zero(n, n), Vector::Zero(n), "zero");
}

Vector resolvent(const MaximalOperator& a, double gamma, const Vector& x) {
  return a.resolvent(gamma, x);
}

Vector yosida(const MaximalOperator& a, double gamma, const Vector& x) {
  return (x - a.resolvent(gamma, x)) / gamma;
}

ResolventInequalityReport check_resolvent_parameter_inequality(const MaximalOperator& a,
                                                               double lambda, double mu,
                                                               const Vector& x, double tol) {
  require_gamma(lambda);
  require_gamma(mu);
  ResolventInequalityReport report;
  report.lhs = (a.resolvent(lambda, x) - a.resolvent(mu, x)).norm();
  report.rhs = std::abs(lambda - mu) * yosida(a, lambda, x).norm();
  report.holds = report.lhs <= report.rhs + tol;
  return report;
}

Vector soft_threshold(const Vector& x, const Vector& thresholds) {
#if defined(FBF_MUTANT_SOFT_THRESHOLD)
  const Vector t = 0.5 * thresholds;
#else
  const Vector& t = thresholds;
#endif
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double shrunk = std::abs(x[i]) - t[i];
    out[i] = shrunk > 0 ? std::copysign(shrunk, x[i]) : 0.0;
  }
  return out;
}

double min_symmetric_eigenvalue(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

namespace prox {

MaximalOperator zero() {
  return MaximalOperator([](double, const Vector& x) -> Vector { return x; },
                         {.name = "zero",
                          .domain = {},
                          .strong_modulus = 0,
                          .potential = [](const Vector&) { return 0.0; }});
}

MaximalOperator l1_norm(double weight) {
  if (!(weight >= 0) || !std::isfinite(weight)) {
    throw ConstructionError("l1_norm: weight must be finite and nonnegative");
  }
  return MaximalOperator(
      [weight](double gamma, const Vector& x) -> Vector {
        return soft_threshold(x, Vector::Constant(x.size(), gamma * weight));
      },
      {.name = "l1_norm",
       .domain = {},
       .strong_modulus = 0,
       .potential = [weight](const Vector& x) { return weight * x.lpNorm<1>(); }});
}

MaximalOperator l1_norm(Vector weights) {
  if (!weights.allFinite() || (weights.array() < 0).any()) {
    throw ConstructionError("l1_norm: weights must be finite and nonnegative");
  }
  const Eigen::Index n = weights.size();
  auto w = std::make_shared<const Vector>(std::move(weights));
  return MaximalOperator(
      [w, n](double gamma, const Vector& x) -> Vector {
        require_dimension(x, n, "l1_norm");
        return soft_threshold(x, gamma * *w);
      },
      {.name = "l1_norm",
       .domain = {},
       .strong_modulus = 0,
       .potential = [w](const Vector& x) { return w->cwiseProduct(x.cwiseAbs()).sum(); }});
}

MaximalOperator box_indicator(double lo, double hi) {
  if (!(lo <= hi)) {
    throw ConstructionError("box_indicator: lo must not exceed hi");
  }
  auto inside = [lo, hi](const Vector& x) {
    return (x.array() >= lo).all() && (x.array() <= hi).all();
  };
  return MaximalOperator(
      [lo, hi](double, const Vector& x) -> Vector { return x.cwiseMax(lo).cwiseMin(hi); },
      {.name = "box_indicator",
       .domain = inside,
       .strong_modulus = 0,
       .potential = [inside](const Vector& x) { return inside(x) ? 0.0 : kInf; }});
}

MaximalOperator box_indicator(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) {
    throw ConstructionError("box_indicator: bound dimensions differ");
  }
  if (!((lo.array() <= hi.array()).all())) {
    throw ConstructionError("box_indicator: lo must not exceed hi");
  }
  const Eigen::Index n = lo.size();
  auto bounds = std::make_shared<const std::pair<Vector, Vector>>(std::move(lo), std::move(hi));
  auto inside = [bounds](const Vector& x) {
    return x.size() == bounds->first.size() && (x.array() >= bounds->first.array()).all() &&
           (x.array() <= bounds->second.array()).all();
  };
  return MaximalOperator(
      [bounds, n](double, const Vector& x) -> Vector {
        require_dimension(x, n, "box_indicator");
        return x.cwiseMax(bounds->first).cwiseMin(bounds->second);
      },
      {.name = "box_indicator",
       .domain = inside,
       .strong_modulus = 0,
       .potential = [inside](const Vector& x) { return inside(x) ? 0.0 : kInf; }});
}

MaximalOperator ball_indicator(double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw ConstructionError("ball_indicator: radius must be positive and finite");
  }
  return MaximalOperator(
      [radius](double, const Vector& x) -> Vector {
        const double norm = x.norm();
        return norm > radius ? Vector(x * (radius / norm)) : x;
      },
      {.name = "ball_indicator",
       .domain = [radius](const Vector& x) { return x.norm() <= radius * (1 + 1e-12); },
       .strong_modulus = 0,
       .potential = [radius](const Vector& x) {
         return x.norm() <= radius * (1 + 1e-12) ? 0.0 : kInf;
       }});
}

MaximalOperator quadratic(Matrix q, Vector b) {
  require_symmetric(q, "quadratic");
  if (b.size() != q.rows()) {
    throw ConstructionError("quadratic: b dimension does not match Q");
  }
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > kPsdTolerance * (1 + q.cwiseAbs().maxCoeff())) {
    throw ConstructionError("quadratic: Q must be symmetric");
  }
  const double lambda_min = min_symmetric_eigenvalue(q);
  if (lambda_min < -kPsdTolerance) {
    throw ConstructionError("quadratic: Q is not positive semidefinite (min eigenvalue " +
                            std::to_string(lambda_min) + ")");
  }
  const Eigen::Index n = q.rows();
  auto data = std::make_shared<const std::pair<Matrix, Vector>>(std::move(q), std::move(b));
  return MaximalOperator(
      [data, n](double gamma, const Vector& x) -> Vector {
        require_dimension(x, n, "quadratic");
        const auto& [qm, bv] = *data;
        Matrix system = Matrix::Identity(n, n) + gamma * qm;
        return system.llt().solve(x - gamma * bv);
      },
      {.name = "quadratic",
       .domain = {},
       .strong_modulus = std::max(0.0, lambda_min),
       .potential = [data](const Vector& x) {
         const auto& [qm, bv] = *data;
         return 0.5 * x.dot(qm * x) + bv.dot(x);
       }});
}

MaximalOperator linear_monotone(Matrix m) {
  require_symmetric(m, "linear_monotone");
  const double lambda_min = min_symmetric_eigenvalue(m);
  if (lambda_min < -kPsdTolerance) {
    throw ConstructionError("linear_monotone: M + Mᵀ is not positive semidefinite");
  }
  const Eigen::Index n = m.rows();
  auto mat = std::make_shared<const Matrix>(std::move(m));
  return MaximalOperator(
      [mat, n](double gamma, const Vector& x) -> Vector {
        require_dimension(x, n, "linear_monotone");
        Matrix system = Matrix::Identity(n, n) + gamma * *mat;
        return system.partialPivLu().solve(x);
      },
      {.name = "linear_monotone", .domain = {}, .strong_modulus = std::max(0.0, lambda_min),
       .potential = {}});
}

}  // namespace prox

MaximalOperator prox_catalog(std::string_view name, const Params& p) {
  if (name == "zero") {
    return prox::zero();
  }
  if (name == "l1_norm") {
    const auto& w = params::has(p, "weight") ? p.at("weight") : nlohmann::json(1.0);
    if (w.is_array()) {
      return prox::l1_norm(params::vector(p, "weight"));
    }
    return prox::l1_norm(params::number(p, "weight", 1.0));
  }
  if (name == "box_indicator") {
    const bool vector_bounds = (params::has(p, "lo") && p.at("lo").is_array()) ||
                               (params::has(p, "hi") && p.at("hi").is_array());
    if (vector_bounds) {
      const auto lo = p.at("lo").is_array() ? params::vector(p, "lo") : Vector();
      const auto hi = p.at("hi").is_array() ? params::vector(p, "hi") : Vector();
      const Eigen::Index n = std::max(lo.size(), hi.size());
      return prox::box_indicator(params::scalar_or_vector(p, "lo", n),
                                 params::scalar_or_vector(p, "hi", n));
    }
    return prox::box_indicator(params::number(p, "lo"), params::number(p, "hi"));
  }
  if (name == "ball_indicator") {
    return prox::ball_indicator(params::number(p, "radius"));
  }
  if (name == "quadratic") {
    const Matrix q = params::matrix(p, "Q");
    const Vector b = params::has(p, "b") ? params::vector(p, "b") : Vector::Zero(q.rows());
    return prox::quadratic(q, b);
  }
  if (name == "linear_monotone") {
    return prox::linear_monotone(params::matrix(p, "M"));
  }
  throw ConstructionError("unknown operator '" + std::string(name) + "'");
}

}  // namespace fbf
