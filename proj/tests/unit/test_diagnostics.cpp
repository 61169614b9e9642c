#include "fbf/diagnostics.hpp"
#include "fbf/problems.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace fbf {
namespace {

Vector v(std::initializer_list<double> xs) {
  Vector out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) {
    out[i++] = x;
  }
  return out;
}

ProblemInstance rotation() { return build("skew_rotation", Params{{"n", 2}}); }

TrajectoryRecord rotation_run(double horizon = 10.0) {
  return integrate(rotation(), schedules::constant(0.5, 1.0), v({1.0, 0.0}),
                   IntegrateOptions{horizon, Method::rk4, 0.01, 0.01});
}

/// Samples at t = 0, dt, 2dt, ... with the given states.
TrajectoryRecord synthetic(const std::vector<Vector>& xs, const std::vector<Vector>& zs,
                           double gamma, double dt) {
  TrajectoryRecord rec;
  rec.step = dt;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    TrajectorySample s;
    s.t = dt * static_cast<double>(k);
    s.x = xs[k];
    s.z = zs[k];
    s.gamma = gamma;
    s.residual = (s.x - s.z).norm() / gamma;
    rec.ergodic.add(s.t, gamma, s.z);
    s.gamma_integral = rec.ergodic.weight();
    if (k > 0) {
      s.ergodic = rec.ergodic.point();
    }
    rec.samples.push_back(std::move(s));
  }
  return rec;
}

/// A rotation scaled by 10 whose declared β is ten times too large.
ProblemInstance misdeclared_rotation() {
  Matrix r(2, 2);
  r << 0, 10, -10, 0;
  return ProblemInstance("misdeclared", prox::zero(),
                         LipschitzOperator([r](const Vector& x) -> Vector { return r * x; }, 1.0, true),
                         2);
}

TEST(Fejer, ConstantTrajectoryAtSolution) {
  const Vector xbar = v({2.0});
  const auto rec = synthetic(std::vector<Vector>(5, xbar), std::vector<Vector>(5, xbar), 0.5, 0.1);
  const auto verdict = fejer_monitor(rec, xbar);
  EXPECT_TRUE(verdict.holds);
  EXPECT_EQ(verdict.worst_margin, 0.0);
}

TEST(Fejer, RotationTrajectoryHolds) {
  EXPECT_TRUE(fejer_monitor(rotation_run(), Vector::Zero(2)).holds);
}

TEST(Fejer, InjectedIncreaseFailsAtItsIndex) {
  std::vector<Vector> xs;
  for (int k = 0; k < 10; ++k) {
    xs.push_back(v({1.0 - 0.05 * k}));
  }
  xs[6] = v({xs[5][0] + 1e-3});
  const auto rec = synthetic(xs, xs, 0.5, 0.1);
  const auto verdict = fejer_monitor(rec, Vector::Zero(1));
  EXPECT_FALSE(verdict.holds);
  EXPECT_TRUE(verdict.violated());
  EXPECT_NEAR(verdict.location, 0.6, 1e-12);
  EXPECT_NEAR(verdict.worst_margin, 1e-3, 1e-12);
}

TEST(Fejer, IterateRecordNegativeControl) {
  IterateRecord rec;
  rec.record(0.5, v({1.0}), v({1.0}));
  rec.record(0.5, v({0.5}), v({0.5}));
  rec.record(0.5, v({0.6}), v({0.6}));
  const auto verdict = fejer_monitor(rec, Vector::Zero(1));
  EXPECT_FALSE(verdict.holds);
  EXPECT_EQ(verdict.location, 2.0);
}

TEST(ResidualIntegral, ZeroFromSolution) {
  const auto p = build("l1_plus_identity", Params{{"b", 3.0}});
  const auto s = schedules::constant(0.5, 1.0);
  const auto rec = integrate(p, s, v({2.0}), IntegrateOptions{5.0, Method::rk4, 0.01, 0.01});
  const auto verdict = residual_integral_monitor(rec, s, *p.known_solution());
  EXPECT_TRUE(verdict.holds);
  EXPECT_EQ(*verdict.value, 0.0);
}

TEST(ResidualIntegral, RotationMatchesClosedForm) {
  // (1 − γ)‖x − z‖² = 0.125 e^{−t/2} → I(10) = 0.25(1 − e^{−5})
  const auto verdict = residual_integral_monitor(rotation_run(), schedules::constant(0.5, 1.0),
                                                 Vector::Zero(2));
  EXPECT_TRUE(verdict.holds);
  EXPECT_NEAR(*verdict.value, 0.24831551325022863, 1e-5);
  EXPECT_LT(*verdict.value, 0.5);
}

TEST(ResidualIntegral, ConstantResidualIsNotCauchy) {
  std::vector<Vector> xs, zs;
  for (int k = 0; k <= 100; ++k) {
    xs.push_back(v({1.0}));
    zs.push_back(v({0.5}));
  }
  const auto rec = synthetic(xs, zs, 0.5, 0.1);
  const auto verdict = residual_integral_monitor(rec, schedules::constant(0.5, 1.0), std::nullopt);
  EXPECT_TRUE(verdict.violated());
}

TEST(ResidualIntegral, ExceedingDistanceBoundFails) {
  std::vector<Vector> xs, zs;
  for (int k = 0; k <= 100; ++k) {
    xs.push_back(v({1.0}));
    zs.push_back(v({0.0}));
  }
  const auto rec = synthetic(xs, zs, 0.5, 0.1);
  const auto verdict = residual_integral_monitor(rec, schedules::constant(0.5, 1.0), v({0.0}));
  EXPECT_TRUE(verdict.violated());
}

TEST(ResidualIntegral, DecayingResidualWithoutSolutionHolds) {
  const auto verdict = residual_integral_monitor(rotation_run(20.0), schedules::constant(0.5, 1.0),
                                                 std::nullopt);
  EXPECT_TRUE(verdict.holds);
}

TEST(Envelope, IntegrandExample) {
  EXPECT_DOUBLE_EQ(decay_integrand(1.0, 1.0, 0.5), 0.5);
}

TEST(Envelope, ConstantStepRateMatchesIntegrand) {
  testing::for_all(10, 61, [](testing::Gen& g, int) {
    const double beta = g.uniform(0.1, 10.0);
    const double rho = g.uniform(0.01, 5.0);
    const double c = beta * g.uniform(0.01, 0.99);
    const double a = decay_integrand(rho, beta, c);
    const double b = constant_step_rate(rho, beta, c, beta - c);
    EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(a));
  });
}

TEST(Envelope, StronglyMonotoneQuadraticWithinEnvelope) {
  const auto p = build("strongly_monotone_quadratic",
                       Params{{"Q", {{1.0, 0.0}, {0.0, 1.0}}}, {"b", {0.0, 0.0}}});
  ASSERT_DOUBLE_EQ(*p.rho(), 1.0);
  ASSERT_DOUBLE_EQ(p.beta(), 1.0);
  const auto s = schedules::constant(0.5, 1.0);
  const auto rec = integrate(p, s, v({0.9, -0.6}), IntegrateOptions{20.0, Method::rk4, 0.01, 0.05});
  const auto report = exponential_envelope(rec, s, 1.0, Vector::Zero(2));
  EXPECT_TRUE(report.holds());
  const double d0 = 0.9 * 0.9 + 0.6 * 0.6;
  EXPECT_DOUBLE_EQ(report.envelope.front(), d0);
  EXPECT_DOUBLE_EQ(report.measured.front(), d0);
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    EXPECT_NEAR(report.envelope[k] / (d0 * std::exp(-0.5 * report.times[k])), 1.0, 1e-12);
  }
  EXPECT_TRUE(envelope_verdict(report).holds);
}

TEST(Envelope, NegativeControl) {
  std::vector<Vector> xs(50, v({1.0}));
  const auto rec = synthetic(xs, xs, 0.5, 0.1);
  const auto report = exponential_envelope(rec, schedules::constant(0.5, 1.0), 1.0, v({0.0}));
  EXPECT_FALSE(report.holds());
  EXPECT_EQ(report.violations.size(), 49u);
  EXPECT_TRUE(envelope_verdict(report).violated());
  EXPECT_THROW(exponential_envelope(rec, schedules::constant(0.5, 1.0), 0.0, v({0.0})),
               ParameterError);
}

TEST(ErgodicObjective, ProbeAtErgodicPointHolds) {
  const auto p = build("lasso", Params{{"M", {{1.0, 0.0}, {0.0, 1.0}}}, {"b", {3.0, 0.5}}});
  const auto s = schedules::constant(0.5, 1.0);
  const auto rec = integrate(p, s, v({-1.0, 2.0}), IntegrateOptions{5.0, Method::rk4, 0.01, 0.5});
  const std::vector<Vector> probes = {ergodic_point(rec)};
  EXPECT_TRUE(ergodic_objective_monitor(rec, p.objective(), probes).holds);
}

TEST(ErgodicObjective, LassoDiscreteGapBoundedByDistanceOverGamma) {
  const auto p = build("lasso", Params{{"M", {{1.0, 0.0}, {0.0, 1.0}}}, {"b", {3.0, 0.5}}});
  const Vector x0 = v({-1.0, 2.0});
  const auto rec = run_tseng(p, GammaSequence(schedules::constant(0.5, 1.0)), x0, 2000, 0.0);
  const Vector xbar = v({2.0, 0.0});
  const std::vector<Vector> probes = {xbar, x0};
  EXPECT_TRUE(ergodic_objective_monitor(rec, p.objective(), probes).holds);
  const double c = (x0 - xbar).squaredNorm() / 2;
  for (const auto& it : rec.iterates) {
    EXPECT_LE(p.objective()(*it.ergodic) - p.objective()(xbar), c / it.gamma_sum + 1e-9);
  }
}

TEST(ErgodicObjective, OutsideDomainIsInapplicable) {
  auto indicator = [](const Vector& x) { return x[0] <= 1.0 ? 0.0 : INFINITY; };
  std::vector<Vector> xs(5, v({2.0}));
  const auto rec = synthetic(xs, xs, 0.5, 0.1);
  const std::vector<Vector> probes = {v({0.0})};
  const auto verdict = ergodic_objective_monitor(rec, indicator, probes);
  EXPECT_FALSE(verdict.applicable);
  EXPECT_FALSE(verdict.violated());
}

TEST(ErgodicObjective, NegativeControl) {
  auto square = [](const Vector& x) { return x.squaredNorm(); };
  std::vector<Vector> xs(5, v({0.0}));
  std::vector<Vector> zs(5, v({5.0}));
  const auto rec = synthetic(xs, zs, 0.5, 1.0);
  const std::vector<Vector> probes = {v({0.0})};
  EXPECT_TRUE(ergodic_objective_monitor(rec, square, probes).violated());
}

TEST(LipschitzProbe, ZeroOperators) {
  const ProblemInstance p("null", prox::zero(), LipschitzOperator::zero(2), 2);
  const std::vector<double> gammas = {0.5};
  EXPECT_EQ(lipschitz_probe(p, gammas, 100, 5.0, 1).max_ratio, 0.0);
}

TEST(LipschitzProbe, RotationIsNormalLinearMap) {
  // ‖γB + γ²I‖ = √(γ² + γ⁴) at γ = 0.5
  const std::vector<double> gammas = {0.5};
  EXPECT_NEAR(lipschitz_probe(rotation(), gammas, 200, 5.0, 3).max_ratio, 0.5590169943749475, 1e-10);
}

TEST(LipschitzProbe, DeterministicGivenSeed) {
  const auto p = build("lasso", Params{{"M", {{1.0, 0.5}, {0.2, 1.0}}}, {"b", {2.0, -1.0}}});
  const std::vector<double> gammas = {0.1 * p.beta(), 0.9 * p.beta()};
  EXPECT_EQ(lipschitz_probe(p, gammas, 500, 5.0, 9).max_ratio,
            lipschitz_probe(p, gammas, 500, 5.0, 9).max_ratio);
  EXPECT_THROW(lipschitz_probe(p, gammas, 0, 5.0, 9), ParameterError);
}

TEST(LipschitzProbe, NegativeControl) {
  const std::vector<double> gammas = {0.9};
  EXPECT_GT(lipschitz_probe(misdeclared_rotation(), gammas, 100, 1.0, 1).max_ratio, std::sqrt(6.0));
}

TEST(Zdot, CoefficientExample) {
  EXPECT_NEAR(zdot_bound_coefficient(0.5, 0.0, 1.0), 1.6770509831248424, 1e-15);
}

TEST(Zdot, RotationHolds) {
  const auto verdict = zdot_bound_monitor(rotation_run(), schedules::constant(0.5, 1.0));
  EXPECT_TRUE(verdict.applicable);
  EXPECT_TRUE(verdict.holds);
}

TEST(Zdot, SinusoidalLassoHolds) {
  const auto p = build("lasso", Params{{"M", {{1.0, 0.5}, {0.2, 1.0}}}, {"b", {2.0, -1.0}}});
  const double beta = p.beta();
  const auto s = schedules::sinusoidal(0.1 * beta, 0.9 * beta, 2 * std::numbers::pi, beta);
  const auto rec = integrate(p, s, v({-2.0, 3.0}), IntegrateOptions{10.0, Method::rk4, 0.01, 0.01});
  const auto verdict = zdot_bound_monitor(rec, s);
  EXPECT_TRUE(verdict.applicable);
  EXPECT_TRUE(verdict.holds) << verdict.worst_margin << " at " << verdict.location;
}

TEST(Zdot, EquilibriumHolds) {
  const Vector xbar = v({2.0});
  const auto rec = synthetic(std::vector<Vector>(5, xbar), std::vector<Vector>(5, xbar), 0.5, 0.01);
  EXPECT_TRUE(zdot_bound_monitor(rec, schedules::constant(0.5, 1.0)).holds);
}

TEST(Zdot, InapplicableWithoutDerivativeOrDenseSamples) {
  const StepSchedule rough("rough", [](double) { return 0.5; }, {},
                           {.delta = 0.5, .eps = 0.5, .beta = 1.0, .deriv_bound = std::nullopt});
  EXPECT_FALSE(zdot_bound_monitor(rotation_run(1.0), rough).applicable);
  const auto sparse = integrate(rotation(), schedules::constant(0.5, 1.0), v({1.0, 0.0}),
                                IntegrateOptions{2.0, Method::rk4, 0.01, 0.5});
  EXPECT_FALSE(zdot_bound_monitor(sparse, schedules::constant(0.5, 1.0)).applicable);
}

TEST(Zdot, NegativeControl) {
  std::vector<Vector> xs, zs;
  for (int k = 0; k < 20; ++k) {
    xs.push_back(v({1.0}));
    zs.push_back(v({0.9 + 5.0 * 0.01 * k}));
  }
  const auto rec = synthetic(xs, zs, 0.5, 0.01);
  EXPECT_TRUE(zdot_bound_monitor(rec, schedules::constant(0.5, 1.0)).violated());
}

TEST(Inclusion, HoldsOnIntegratedRecords) {
  for (const auto& spec : default_catalog()) {
    SCOPED_TRACE(spec.name);
    const auto p = build(spec);
    const auto s = schedules::sinusoidal(0.2 * p.beta(), 0.8 * p.beta(), 3.0, p.beta());
    const auto rec = integrate(p, s, Vector::Constant(p.dimension(), 1.5),
                               IntegrateOptions{3.0, Method::rk4, 0.01, 0.01});
    EXPECT_TRUE(inclusion_monitor(p, rec).holds);
    EXPECT_TRUE(velocity_monitor(p, rec).holds);
  }
}

TEST(Inclusion, NegativeControl) {
  auto rec = rotation_run(1.0);
  rec.samples[40].z[0] += 1e-9;
  const auto verdict = inclusion_monitor(rotation(), rec);
  EXPECT_TRUE(verdict.violated());
  EXPECT_NEAR(verdict.location, 0.4, 1e-12);
}

TEST(Velocity, NegativeControl) {
  const auto p = misdeclared_rotation();
  std::vector<Vector> xs(3, v({1.0, 0.0}));
  const auto rec = synthetic(xs, xs, 0.9, 0.01);
  EXPECT_TRUE(velocity_monitor(p, rec).violated());
}

TEST(Monitors, DeterministicVerdicts) {
  const auto a = rotation_run();
  const auto b = rotation_run();
  const auto s = schedules::constant(0.5, 1.0);
  EXPECT_EQ(fejer_monitor(a, Vector::Zero(2)).worst_margin, fejer_monitor(b, Vector::Zero(2)).worst_margin);
  EXPECT_EQ(*residual_integral_monitor(a, s, Vector::Zero(2)).value,
            *residual_integral_monitor(b, s, Vector::Zero(2)).value);
  EXPECT_EQ(zdot_bound_monitor(a, s).worst_margin, zdot_bound_monitor(b, s).worst_margin);
}

}  // namespace
}  // namespace fbf
