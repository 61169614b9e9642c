#include "fbf/schedule.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace fbf {
namespace {

TEST(Schedule, Constant) {
  const auto s = schedules::constant(0.5, 1.0);
  for (double t : {0.0, 1.0, 1e6}) {
    EXPECT_EQ(s(t), 0.5);
    EXPECT_EQ(*s.derivative(t), 0.0);
  }
  EXPECT_EQ(*s.deriv_bound(), 0.0);
  EXPECT_DOUBLE_EQ(s.delta(), 0.5);
  EXPECT_DOUBLE_EQ(s.eps(), 0.5);
}

TEST(Schedule, Sinusoidal) {
  const auto s = schedules::sinusoidal(0.1, 0.9, 2 * std::numbers::pi, 1.0);
  for (double t : {0.0, 0.3, 1.7, 4.0, 11.0}) {
    EXPECT_NEAR(s(t), 0.5 + 0.4 * std::sin(t), 1e-15);
    EXPECT_NEAR(*s.derivative(t), 0.4 * std::cos(t), 1e-15);
  }
  EXPECT_NEAR(*s.deriv_bound(), 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(s.delta(), 0.1);
  EXPECT_NEAR(s.eps(), 0.1, 1e-15);
}

TEST(Schedule, RampIsClampedLinear) {
  const auto s = schedules::ramp(0.2, 0.8, 10.0, 1.0);
  EXPECT_DOUBLE_EQ(s(0.0), 0.2);
  EXPECT_DOUBLE_EQ(s(5.0), 0.5);
  EXPECT_DOUBLE_EQ(s(10.0), 0.8);
  EXPECT_DOUBLE_EQ(s(20.0), 0.8);
  EXPECT_NEAR(*s.derivative(3.0), 0.06, 1e-15);
  EXPECT_EQ(*s.derivative(12.0), 0.0);
  EXPECT_NEAR(*s.deriv_bound(), 0.06, 1e-15);
}

TEST(Schedule, RejectsRangesOutsideOpenInterval) {
  EXPECT_THROW(schedules::constant(1.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::constant(0.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::constant(1.5, 1.0), ConstructionError);
  EXPECT_THROW(schedules::sinusoidal(0.1, 1.0, 1.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::sinusoidal(0.5, 0.2, 1.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::sinusoidal(0.1, 0.5, 0.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::ramp(0.2, 1.2, 1.0, 1.0), ConstructionError);
  EXPECT_THROW(schedules::ramp(0.2, 0.5, -1.0, 1.0), ConstructionError);
}

TEST(Schedule, CatalogByName) {
  EXPECT_EQ(schedule_catalog("constant", Params{{"value", 0.3}}, 1.0)(7.0), 0.3);
  const auto s = schedule_catalog("sinusoidal", Params{{"lo", 0.1}, {"hi", 0.9}}, 1.0);
  EXPECT_NEAR(s(1.0), 0.5 + 0.4 * std::sin(1.0), 1e-15);
  EXPECT_EQ(schedule_catalog("ramp", Params{{"start", 0.2}, {"end", 0.4}, {"duration", 2}}, 1.0)(9),
            0.4);
  EXPECT_THROW(schedule_catalog("constant", Params::object(), 1.0), ConstructionError);
  EXPECT_THROW(schedule_catalog("jagged", Params::object(), 1.0), ConstructionError);
}

TEST(ScheduleProperties, StaysInsideDeclaredBounds) {
  testing::for_all(200, 21, [](testing::Gen& g, int k) {
    const double beta = g.uniform(0.1, 10.0);
    const double lo = beta * g.uniform(0.01, 0.5);
    const double hi = beta * g.uniform(0.5, 0.99);
    const StepSchedule s = (k % 3 == 0)   ? schedules::constant(lo, beta)
                           : (k % 3 == 1) ? schedules::sinusoidal(lo, hi, g.uniform(0.1, 10), beta)
                                          : schedules::ramp(hi, lo, g.uniform(0.1, 10), beta);
    for (int i = 0; i < 50; ++i) {
      const double t = g.uniform(0.0, 50.0);
      EXPECT_GE(s(t), s.delta() - 1e-15);
      EXPECT_LE(s(t), s.beta() - s.eps() + 1e-15);
      EXPECT_LE(std::abs(*s.derivative(t)), *s.deriv_bound() + 1e-12);
    }
  });
}

TEST(ScheduleProperties, DerivativeMatchesFiniteDifference) {
  testing::for_all(50, 22, [](testing::Gen& g, int) {
    const double beta = g.uniform(0.5, 3.0);
    const auto s = schedules::sinusoidal(0.1 * beta, 0.9 * beta, g.uniform(0.5, 10), beta);
    const double t = g.uniform(0.0, 20.0);
    const double h = 1e-5;
    EXPECT_NEAR((s(t + h) - s(t - h)) / (2 * h), *s.derivative(t), 1e-6 * (1 + *s.deriv_bound()));
  });
}

}  // namespace
}  // namespace fbf
