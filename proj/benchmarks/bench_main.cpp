#include <benchmark/benchmark.h>

#include <random>

#include "tradeoff/greedy.hpp"
#include "tradeoff/kernel_recovery.hpp"
#include "tradeoff/unsymmetric.hpp"

using namespace tradeoff;

namespace {

FunctionalSet grid_points(std::size_t per_side) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < per_side; ++i) {
    for (std::size_t j = 0; j < per_side; ++j) {
      pts.push_back({(i + 0.5) / per_side, (j + 0.5) / per_side});
    }
  }
  return point_set(pts);
}

const Kernel kMatern = MaternSobolevKernel(5, 2, 1.0);

}  // namespace

static void BM_GramAssembly(benchmark::State& state) {
  const PoissonSetup s = make_poisson_setup(PoissonLayout{static_cast<std::size_t>(state.range(0))}, {5, 2, 1.0});
  const FunctionalSet lambdas = s.data_functionals();
  for (auto _ : state) benchmark::DoNotOptimize(dual_gram(s.kernel, lambdas).matrix.data());
  state.SetLabel(std::to_string(lambdas.size()) + " functionals");
}
BENCHMARK(BM_GramAssembly)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_PowerEvaluation(benchmark::State& state) {
  const PowerEvaluator ev(kMatern, grid_points(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(Functional::point({u(rng), u(rng)})).power_squared);
}
BENCHMARK(BM_PowerEvaluation)->Arg(5)->Arg(10)->Arg(15);

static void BM_KansaBuild(benchmark::State& state) {
  PoissonLayout layout;
  layout.interior_per_side = static_cast<std::size_t>(state.range(0));
  const PoissonSetup s = make_poisson_setup(layout, {5, 2, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(build_kansa(s).rank);
}
BENCHMARK(BM_KansaBuild)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_Svd(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix a(n + 16, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::svd(a).sigma.data());
}
BENCHMARK(BM_Svd)->Arg(50)->Arg(121)->Unit(benchmark::kMillisecond);

static void BM_Greedy(benchmark::State& state) {
  const FunctionalSet candidates = grid_points(10);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(p_greedy(kMatern, candidates, steps, 0.0).steps());
}
BENCHMARK(BM_Greedy)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_GreedyNewton(benchmark::State& state) {
  const FunctionalSet candidates = grid_points(10);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(p_greedy_newton(kMatern, candidates, steps, 0.0).steps());
}
BENCHMARK(BM_GreedyNewton)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
