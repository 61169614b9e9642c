#include "fbf/diagnostics.hpp"
#include "fbf/discrete.hpp"
#include "fbf/dynamics.hpp"
#include "fbf/problems.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace fbf;

ProblemInstance lasso() {
  return build("lasso", Params{{"M", {{1.0, 0.5}, {0.2, 1.0}}}, {"b", {2.0, -1.0}}, {"weight", 0.5}});
}

void BM_VectorField(benchmark::State& state) {
  const auto p = lasso();
  const Vector x = Vector::Constant(2, 1.5);
  const double gamma = 0.5 * p.beta();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbf_vector_field(p, gamma, x));
  }
}
BENCHMARK(BM_VectorField);

void BM_TsengStep(benchmark::State& state) {
  const auto p = lasso();
  Vector x = Vector::Constant(2, 1.5);
  const double gamma = 0.5 * p.beta();
  for (auto _ : state) {
    x = tseng_step(p, gamma, x).x_next;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_TsengStep);

void BM_IntegrateRk4(benchmark::State& state) {
  const auto p = build("skew_rotation", Params{{"n", static_cast<int>(state.range(0))}});
  const auto s = schedules::constant(0.5, 1.0);
  const Vector x0 = Vector::Ones(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, s, x0, IntegrateOptions{10.0, Method::rk4, 0.01, 0.1}));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_IntegrateRk4)->Arg(2)->Arg(16)->Arg(128);

void BM_RunTseng(benchmark::State& state) {
  const auto p = lasso();
  const auto s = schedules::constant(0.5 * p.beta(), p.beta());
  const Vector x0 = Vector::Constant(2, -1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_tseng(p, GammaSequence(s), x0, 1000, 0.0));
  }
}
BENCHMARK(BM_RunTseng);

void BM_LipschitzProbe(benchmark::State& state) {
  const auto p = lasso();
  const std::vector<double> gammas = {0.1 * p.beta(), 0.5 * p.beta(), 0.9 * p.beta()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lipschitz_probe(p, gammas, 10000, 10.0, 1));
  }
}
BENCHMARK(BM_LipschitzProbe);

}  // namespace

BENCHMARK_MAIN();
