#include "fbf/operators.hpp"
#include "fbf/oracles.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace fbf {
namespace {

using testing::for_all;
using testing::Gen;

Vector v(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) {
    out[i++] = x;
  }
  return out;
}

TEST(SoftThreshold, ShrinksTowardZero) {
  const Vector x = v({3.0, -0.5, 1.2, -2.0});
  const Vector y = soft_threshold(x, Vector::Constant(4, 1.0));
  EXPECT_DOUBLE_EQ(y[0], 2.0);
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  EXPECT_NEAR(y[2], 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(y[3], -1.0);
}

TEST(SoftThreshold, ExactlyZeroAtThreshold) {
  const Vector y = soft_threshold(v({0.5, -0.5}), Vector::Constant(2, 0.5));
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[1], 0.0);
}

TEST(L1Resolvent, MatchesSoftThresholdAtGammaTimesWeight) {
  const auto a = prox::l1_norm(2.0);
  const Vector y = a.resolvent(0.25, v({1.0, -0.2, 0.5}));
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  EXPECT_DOUBLE_EQ(y[2], 0.0);
}

TEST(L1Resolvent, AbsoluteValueAtHalf) {
  // J_{0.5 ∂|·|}(1) = soft_{0.5}(1)
  const auto a = prox::l1_norm(1.0);
  EXPECT_DOUBLE_EQ(a.resolvent(0.5, v({1.0}))[0], 0.5);
}

TEST(L1Resolvent, PerCoordinateWeights) {
  const auto a = prox::l1_norm(v({0.0, 1.0}));
  const Vector y = a.resolvent(1.0, v({0.3, 0.3}));
  EXPECT_DOUBLE_EQ(y[0], 0.3);
  EXPECT_DOUBLE_EQ(y[1], 0.0);
  EXPECT_THROW(a.resolvent(1.0, v({1.0})), InvalidStateError);
}

TEST(BoxResolvent, ClampsIndependentlyOfGamma) {
  const auto a = prox::box_indicator(-1.0, 2.0);
  for (double gamma : {0.01, 1.0, 100.0}) {
    const Vector y = a.resolvent(gamma, v({-3.0, 0.5, 7.0}));
    EXPECT_EQ(y, v({-1.0, 0.5, 2.0}));
  }
  EXPECT_TRUE(a.in_domain(v({0.0, 2.0})));
  EXPECT_FALSE(a.in_domain(v({0.0, 2.5})));
  EXPECT_TRUE(std::isinf(a.potential(v({3.0}))));
  EXPECT_EQ(a.potential(v({1.0})), 0.0);
}

TEST(BoxResolvent, VectorBounds) {
  const auto a = prox::box_indicator(v({0.5, -1.0}), v({2.0, 1.0}));
  EXPECT_EQ(a.resolvent(1.0, v({0.0, 0.0})), v({0.5, 0.0}));
  EXPECT_THROW(prox::box_indicator(v({1.0}), v({0.0})), ConstructionError);
  EXPECT_THROW(prox::box_indicator(v({0.0, 0.0}), v({1.0})), ConstructionError);
}

TEST(BallResolvent, RadialProjection) {
  const auto a = prox::ball_indicator(2.0);
  const Vector y = a.resolvent(1.0, v({3.0, 4.0}));
  EXPECT_NEAR(y[0], 1.2, 1e-15);
  EXPECT_NEAR(y[1], 1.6, 1e-15);
  EXPECT_EQ(a.resolvent(1.0, v({1.0, 1.0})), v({1.0, 1.0}));
}

TEST(QuadraticResolvent, SolvesLinearSystem) {
  // J_{γ∇q}(x) = (I + γQ)^{-1}(x − γb); Q = 2I, b = (1,0), γ = 0.5 → (x − (0.5,0))/2
  const auto a = prox::quadratic(2.0 * Matrix::Identity(2, 2), v({1.0, 0.0}));
  const Vector y = a.resolvent(0.5, v({3.0, 4.0}));
  EXPECT_NEAR(y[0], 1.25, 1e-15);
  EXPECT_NEAR(y[1], 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(a.strong_modulus(), 2.0);
}

TEST(QuadraticResolvent, RejectsIndefinite) {
  Matrix q(2, 2);
  q << 1, 0, 0, -1;
  EXPECT_THROW(prox::quadratic(q, Vector::Zero(2)), ConstructionError);
  Matrix nonsym(2, 2);
  nonsym << 1, 1, 0, 1;
  EXPECT_THROW(prox::quadratic(nonsym, Vector::Zero(2)), ConstructionError);
}

TEST(LinearMonotoneResolvent, InvertsIdentityPlusGammaM) {
  Matrix m(2, 2);
  m << 0, 1, -1, 0;
  const auto a = prox::linear_monotone(m);
  const Vector x = v({1.0, 2.0});
  const Vector y = a.resolvent(0.5, x);
  EXPECT_LT((y + 0.5 * m * y - x).norm(), 1e-14);
  Matrix bad(2, 2);
  bad << -1, 0, 0, 1;
  EXPECT_THROW(prox::linear_monotone(bad), ConstructionError);
}

TEST(Resolvent, RejectsBadArguments) {
  const auto a = prox::l1_norm(1.0);
  EXPECT_THROW(a.resolvent(0.0, v({1.0})), ParameterError);
  EXPECT_THROW(a.resolvent(-1.0, v({1.0})), ParameterError);
  EXPECT_THROW(a.resolvent(std::numeric_limits<double>::infinity(), v({1.0})), ParameterError);
  EXPECT_THROW(a.resolvent(1.0, v({std::nan("")})), InvalidStateError);
}

TEST(Yosida, AbsoluteValue) {
  // A_γ of ∂|·| at x is clip(x/γ, −1, 1)
  const auto a = prox::l1_norm(1.0);
  EXPECT_DOUBLE_EQ(yosida(a, 0.5, v({2.0}))[0], 1.0);
  EXPECT_DOUBLE_EQ(yosida(a, 4.0, v({2.0}))[0], 0.5);
}

TEST(ParameterInequality, HoldsOnExample) {
  const auto a = prox::l1_norm(1.0);
  const auto rep = check_resolvent_parameter_inequality(a, 0.5, 1.5, v({2.0}));
  // J_{0.5}2 = 1.5, J_{1.5}2 = 0.5; A_{0.5}2 = 1
  EXPECT_DOUBLE_EQ(rep.lhs, 1.0);
  EXPECT_DOUBLE_EQ(rep.rhs, 1.0);
  EXPECT_TRUE(rep.holds);
}

TEST(LipschitzOperator, AffineMetadata) {
  Matrix m(2, 2);
  m << 0, 2, -2, 0;
  const auto b = LipschitzOperator::affine(m, Vector::Zero(2));
  EXPECT_DOUBLE_EQ(b.beta(), 0.5);
  EXPECT_TRUE(b.monotone());
  EXPECT_DOUBLE_EQ(b.strong_modulus(), 0.0);

  Matrix neg(1, 1);
  neg << -1;
  EXPECT_FALSE(LipschitzOperator::affine(neg, Vector::Zero(1)).monotone());
  EXPECT_TRUE(std::isinf(LipschitzOperator::zero(3).beta()));
  EXPECT_THROW(LipschitzOperator::affine(m, Vector::Zero(3)), ConstructionError);
}

TEST(ProxCatalog, BuildsByName) {
  EXPECT_EQ(prox_catalog("l1_norm", Params{{"weight", 0.5}}).name(), "l1_norm");
  EXPECT_EQ(prox_catalog("box_indicator", Params{{"lo", -1}, {"hi", 1}}).name(), "box_indicator");
  const auto box = prox_catalog("box_indicator", Params{{"lo", {0.0, 1.0}}, {"hi", 2.0}});
  EXPECT_EQ(box.resolvent(1.0, v({-1.0, 0.0})), v({0.0, 1.0}));
  EXPECT_EQ(prox_catalog("ball_indicator", Params{{"radius", 1}}).name(), "ball_indicator");
  EXPECT_EQ(prox_catalog("quadratic", Params{{"Q", {{1.0, 0.0}, {0.0, 1.0}}}}).name(), "quadratic");
  EXPECT_EQ(prox_catalog("linear_monotone", Params{{"M", {{0.0, 1.0}, {-1.0, 0.0}}}}).name(),
            "linear_monotone");
  EXPECT_EQ(prox_catalog("zero").name(), "zero");
}

TEST(ProxCatalog, ErrorsNameTheKey) {
  try {
    prox_catalog("ball_indicator", Params::object());
    FAIL() << "expected ConstructionError";
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("radius"), std::string::npos);
  }
  EXPECT_THROW(prox_catalog("nope"), ConstructionError);
  EXPECT_THROW(prox_catalog("l1_norm", Params{{"weight", -1.0}}), ConstructionError);
}

struct Zoo {
  const char* name;
  MaximalOperator (*make)(Gen&, Eigen::Index);
};

const Zoo kZoo[] = {
    {"zero", [](Gen&, Eigen::Index) { return prox::zero(); }},
    {"l1_norm", [](Gen& g, Eigen::Index) { return prox::l1_norm(g.uniform(0.0, 2.0)); }},
    {"weighted_l1", [](Gen& g, Eigen::Index n) { return prox::l1_norm(g.positive(n, 0.0, 2.0)); }},
    {"box", [](Gen& g, Eigen::Index n) {
       const Vector lo = g.vec(n, 2.0);
       return prox::box_indicator(lo, Vector(lo + g.positive(n, 0.0, 3.0)));
     }},
    {"ball", [](Gen& g, Eigen::Index) { return prox::ball_indicator(g.uniform(0.1, 3.0)); }},
    {"quadratic", [](Gen& g, Eigen::Index n) { return prox::quadratic(g.spd(n, 0.0), g.vec(n)); }},
    {"linear_monotone", [](Gen& g, Eigen::Index n) { return prox::linear_monotone(g.monotone(n)); }},
};

TEST(OperatorProperties, FirmlyNonexpansive) {
  for (const auto& entry : kZoo) {
    SCOPED_TRACE(entry.name);
    for_all(150, 11, [&](Gen& g, int) {
      const Eigen::Index n = g.integer(1, 4);
      const auto a = entry.make(g, n);
      const Vector x = g.vec(n);
      const Vector y = g.vec(n);
      const double gamma = g.uniform(0.05, 4.0);
      const Vector jx = a.resolvent(gamma, x);
      const Vector jy = a.resolvent(gamma, y);
      EXPECT_LE((jx - jy).squaredNorm(), (x - y).dot(jx - jy) + 1e-10 * (1 + (x - y).squaredNorm()));
    });
  }
}

TEST(OperatorProperties, YosidaIsInverseGammaLipschitz) {
  for (const auto& entry : kZoo) {
    SCOPED_TRACE(entry.name);
    for_all(150, 12, [&](Gen& g, int) {
      const Eigen::Index n = g.integer(1, 4);
      const auto a = entry.make(g, n);
      const Vector x = g.vec(n);
      const Vector y = g.vec(n);
      const double gamma = g.uniform(0.05, 4.0);
      EXPECT_LE((yosida(a, gamma, x) - yosida(a, gamma, y)).norm(),
                (x - y).norm() / gamma + 1e-10);
    });
  }
}

TEST(OperatorProperties, ResolventParameterInequality) {
  for (const auto& entry : kZoo) {
    SCOPED_TRACE(entry.name);
    for_all(150, 13, [&](Gen& g, int) {
      const Eigen::Index n = g.integer(1, 4);
      const auto a = entry.make(g, n);
      const auto rep = check_resolvent_parameter_inequality(a, g.uniform(0.05, 4.0),
                                                            g.uniform(0.05, 4.0), g.vec(n));
      EXPECT_TRUE(rep.holds) << rep.lhs << " > " << rep.rhs;
    });
  }
}

TEST(OperatorProperties, ResolventLandsInDomain) {
  for (const auto& entry : kZoo) {
    SCOPED_TRACE(entry.name);
    for_all(100, 14, [&](Gen& g, int) {
      const Eigen::Index n = g.integer(1, 4);
      const auto a = entry.make(g, n);
      EXPECT_TRUE(a.in_domain(a.resolvent(g.uniform(0.05, 4.0), g.vec(n, 10.0))));
    });
  }
}

TEST(OperatorProperties, SoftThresholdMatchesGridProx) {
  for_all(40, 15, [](Gen& g, int) {
    const double x = g.uniform(-4.0, 4.0);
    const double t = g.uniform(0.0, 2.0);
    const double grid = oracle::grid_minimize_1d(
        [&](double y) { return t * std::abs(y) + 0.5 * (y - x) * (y - x); }, -6.0, 6.0, 1e-5);
    EXPECT_NEAR(soft_threshold(Vector::Constant(1, x), Vector::Constant(1, t))[0], grid, 1e-4);
  });
}

TEST(OperatorProperties, ProxMatchesGridSearchIn2D) {
  for_all(20, 16, [](Gen& g, int) {
    Matrix q = g.spd(2, 0.2);
    const Vector b = g.vec(2, 1.0);
    const auto a = prox::quadratic(q, b);
    const Vector x = g.vec(2, 3.0);
    const double gamma = g.uniform(0.2, 2.0);
    const Vector y = oracle::zoom_minimize(
        [&](const Vector& y) { return a.potential(y) + (y - x).squaredNorm() / (2 * gamma); },
        Vector::Constant(2, -10.0), Vector::Constant(2, 10.0));
    EXPECT_LT((y - a.resolvent(gamma, x)).norm(), 1e-4);
  });
}

TEST(Eigen, SymmetricHelpers) {
  Matrix m(2, 2);
  m << 1, 3, -1, 2;
  // symmetric part [[1,1],[1,2]] → eigenvalues (3 ± √5)/2
  EXPECT_NEAR(min_symmetric_eigenvalue(m), (3 - std::sqrt(5.0)) / 2, 1e-14);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -3;
  d(1, 1) = 2;
  EXPECT_NEAR(spectral_norm(d), 3.0, 1e-14);
}

}  // namespace
}  // namespace fbf
