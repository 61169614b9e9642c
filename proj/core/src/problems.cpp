#include "fbf/problems.hpp"

#include "fbf/oracles.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace fbf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Eigen::Index kGridOracleMaxDim = 3;

// Everything build() and oracle_solve() need for one catalog entry.
struct Recipe {
  ProblemInstance instance;
  std::optional<Vector> closed_form;
  Vector search_lo;
  Vector search_hi;
};

double soft(double v, double t) {
  return std::abs(v) > t ? v - std::copysign(t, v) : 0.0;
}

bool inside(const Vector& x, const Vector& lo, const Vector& hi) {
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

void clip_search_box(Recipe& r, const Params& p) {
  const double radius = params::number(p, "search_radius", 10.0);
  const Eigen::Index n = r.instance.dimension();
  if (r.search_lo.size() == 0) {
    r.search_lo = Vector::Constant(n, -radius);
    r.search_hi = Vector::Constant(n, radius);
  } else {
    r.search_lo = r.search_lo.cwiseMax(-radius);
    r.search_hi = r.search_hi.cwiseMin(radius);
  }
}

Recipe lasso(const Params& p) {
  const Matrix m = params::matrix(p, "M");
  const Vector b = params::vector(p, "b");
  const double w = params::number(p, "weight", 1.0);
  if (b.size() != m.rows()) {
    throw ConstructionError("lasso: b must have as many entries as M has rows");
  }
  const Matrix gram = m.transpose() * m;
  const Vector mtb = m.transpose() * b;
  const Eigen::Index n = m.cols();

  Recipe r{ProblemInstance("lasso", prox::l1_norm(w),
                           LipschitzOperator::affine(gram, -mtb, "lasso_gradient"), n),
           std::nullopt, Vector(), Vector()};
  const double lambda_min = min_symmetric_eigenvalue(gram);
  if (lambda_min > 1e-12) {
    r.instance.set_rho(lambda_min, Source::closed_form);
  }
  r.instance.set_objective([m, b, w](const Vector& x) {
    return w * x.lpNorm<1>() + 0.5 * (m * x - b).squaredNorm();
  });

  const Matrix off_diagonal = gram - Matrix(gram.diagonal().asDiagonal());
  if (off_diagonal.cwiseAbs().maxCoeff() <= 1e-14 && (gram.diagonal().array() > 0).all()) {
    // Separable: minimize ½d_i x_i² − (Mᵀb)_i x_i + w|x_i| per coordinate.
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = soft(mtb[i], w) / gram(i, i);
    }
    r.closed_form = x;
  }
  clip_search_box(r, p);
  return r;
}

Recipe skew_rotation(const Params& p) {
  const auto n = static_cast<Eigen::Index>(params::integer(p, "n", 2));
  if (n < 2 || n % 2 != 0) {
    throw ConstructionError("skew_rotation: n must be a positive even integer");
  }
  Matrix skew = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; i += 2) {
    skew(i, i + 1) = 1;
    skew(i + 1, i) = -1;
  }
  Recipe r{ProblemInstance("skew_rotation", prox::zero(),
                           LipschitzOperator::affine(skew, Vector::Zero(n), "rotation"), n),
           Vector::Zero(n), Vector(), Vector()};
  clip_search_box(r, p);
  return r;
}

Recipe strongly_monotone_quadratic(const Params& p) {
  const Matrix q = params::matrix(p, "Q");
  const Eigen::Index n = q.rows();
  if (q.cols() != n) {
    throw ConstructionError("strongly_monotone_quadratic: Q must be square");
  }
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConstructionError("strongly_monotone_quadratic: Q must be symmetric");
  }
  const Vector b = params::has(p, "b") ? params::vector(p, "b") : Vector::Zero(n);
  const Vector lo = params::has(p, "lo") ? params::scalar_or_vector(p, "lo", n)
                                         : Vector::Constant(n, -1.0);
  const Vector hi = params::has(p, "hi") ? params::scalar_or_vector(p, "hi", n)
                                         : Vector::Constant(n, 1.0);
  if (b.size() != n) {
    throw ConstructionError("strongly_monotone_quadratic: b dimension does not match Q");
  }
  const double lambda_min = min_symmetric_eigenvalue(q);
  if (!(lambda_min > kPsdTolerance)) {
    throw ConstructionError("strongly_monotone_quadratic: Q must be positive definite");
  }
  Recipe r{ProblemInstance("strongly_monotone_quadratic", prox::box_indicator(lo, hi),
                           LipschitzOperator::affine(q, b, "quadratic_gradient"), n),
           std::nullopt, lo, hi};
  r.instance.set_rho(lambda_min, Source::closed_form);
  r.instance.set_objective([q, b, lo, hi](const Vector& x) {
    return inside(x, lo, hi) ? 0.5 * x.dot(q * x) + b.dot(x) : kInf;
  });
  const Vector unconstrained = q.llt().solve(-b);
  if (inside(unconstrained, lo, hi)) {
    r.closed_form = unconstrained;
  }
  clip_search_box(r, p);
  return r;
}

Recipe l1_plus_identity(const Params& p) {
  Vector b;
  if (params::has(p, "b") && p.at("b").is_number()) {
    b = Vector::Constant(1, params::number(p, "b"));
  } else {
    b = params::vector(p, "b");
  }
  const double w = params::number(p, "weight", 1.0);
  const Eigen::Index n = b.size();
  Recipe r{ProblemInstance("l1_plus_identity", prox::l1_norm(w),
                           LipschitzOperator::affine(Matrix::Identity(n, n), -b, "shifted_identity"),
                           n),
           std::nullopt, Vector(), Vector()};
  r.instance.set_rho(1.0, Source::closed_form);
  r.instance.set_objective(
      [b, w](const Vector& x) { return w * x.lpNorm<1>() + 0.5 * (x - b).squaredNorm(); });
  // 0 ∈ w∂|x_i| + x_i − b_i  ⟺  x_i = soft(b_i, w).
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = soft(b[i], w);
  }
  r.closed_form = x;
  clip_search_box(r, p);
  return r;
}

Recipe constrained_saddle(const Params& p) {
  const Matrix payoff = params::matrix(p, "payoff");
  const Eigen::Index m = payoff.rows();
  const Eigen::Index k = payoff.cols();
  const Eigen::Index n = m + k;
  Matrix skew = Matrix::Zero(n, n);
  skew.topRightCorner(m, k) = payoff;
  skew.bottomLeftCorner(k, m) = -payoff.transpose();
  const Vector lo = params::has(p, "lo") ? params::scalar_or_vector(p, "lo", n)
                                         : Vector::Constant(n, -1.0);
  const Vector hi = params::has(p, "hi") ? params::scalar_or_vector(p, "hi", n)
                                         : Vector::Constant(n, 1.0);
  Recipe r{ProblemInstance("constrained_saddle", prox::box_indicator(lo, hi),
                           LipschitzOperator::affine(skew, Vector::Zero(n), "saddle_field"), n),
           std::nullopt, lo, hi};
  // B(0) = 0 and 0 ∈ N_C(0) whenever the box contains the origin.
  if (inside(Vector::Zero(n), lo, hi)) {
    r.closed_form = Vector::Zero(n);
  }
  clip_search_box(r, p);
  return r;
}

Recipe make_recipe(const ProblemSpec& spec) {
  const auto& p = spec.params;
  if (spec.name == "lasso") {
    return lasso(p);
  }
  if (spec.name == "skew_rotation") {
    return skew_rotation(p);
  }
  if (spec.name == "strongly_monotone_quadratic") {
    return strongly_monotone_quadratic(p);
  }
  if (spec.name == "l1_plus_identity") {
    return l1_plus_identity(p);
  }
  if (spec.name == "constrained_saddle") {
    return constrained_saddle(p);
  }
  throw ConstructionError("unknown problem '" + spec.name + "'");
}

Vector grid_oracle(const Recipe& r) {
  const auto& problem = r.instance;
  if (problem.dimension() > kGridOracleMaxDim) {
    throw ParameterError("grid oracle limited to dimension " + std::to_string(kGridOracleMaxDim));
  }
  const double gamma = std::isfinite(problem.beta()) ? 0.5 * problem.beta() : 1.0;
  auto residual = [&](const Vector& x) {
    const Vector y = x - gamma * problem.b()(x);
    return (x - problem.a().resolvent(gamma, y)).norm();
  };
  oracle::ZoomOptions options;
  if (problem.dimension() == 3) {
    options.coarse_points = 41;
  }
  return oracle::zoom_minimize(residual, r.search_lo, r.search_hi, options);
}

}  // namespace

ProblemInstance build(const ProblemSpec& spec) {
  Recipe r = make_recipe(spec);
  if (r.closed_form) {
    r.instance.set_known_solution(*r.closed_form, Source::closed_form);
  } else if (r.instance.dimension() <= kGridOracleMaxDim) {
    r.instance.set_known_solution(grid_oracle(r), Source::oracle);
  }
  r.instance.params = spec.params;
  return std::move(r.instance);
}

ProblemInstance build(std::string_view name, const Params& params) {
  return build(ProblemSpec{std::string(name), params});
}

Vector oracle_solve(const ProblemSpec& spec) {
  const Recipe r = make_recipe(spec);
  if (r.closed_form) {
    return *r.closed_form;
  }
  return grid_oracle(r);
}

std::vector<ProblemSpec> default_catalog() {
  using nlohmann::json;
  return {
      {"l1_plus_identity", json{{"b", 3.0}}},
      {"l1_plus_identity", json{{"b", {3.0, -0.5, 1.2}}, {"weight", 1.0}}},
      {"skew_rotation", json{{"n", 2}}},
      {"skew_rotation", json{{"n", 4}}},
      {"lasso", json{{"M", {{1.0, 0.0}, {0.0, 1.0}}}, {"b", {3.0, 0.5}}, {"weight", 1.0}}},
      {"lasso", json{{"M", {{1.0, 0.5}, {0.2, 1.0}}}, {"b", {2.0, -1.0}}, {"weight", 0.5}}},
      {"strongly_monotone_quadratic",
       json{{"Q", {{1.0, 0.0}, {0.0, 1.0}}}, {"b", {0.0, 0.0}}, {"lo", -1.0}, {"hi", 1.0}}},
      {"strongly_monotone_quadratic",
       json{{"Q", {{2.0, 0.5}, {0.5, 1.0}}}, {"b", {-4.0, 1.0}}, {"lo", -1.0}, {"hi", 1.0}}},
      {"constrained_saddle", json{{"payoff", {{1.0}}}, {"lo", {0.5, -1.0}}, {"hi", {2.0, 1.0}}}},
      {"constrained_saddle",
       json{{"payoff", {{0.0, 1.0}, {-1.0, 0.0}}}, {"lo", -1.0}, {"hi", 1.0}}},
  };
}

}  // namespace fbf
