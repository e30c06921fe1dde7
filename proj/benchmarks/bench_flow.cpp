#include <benchmark/benchmark.h>

#include <vector>

#include "betaflow/initial_measure.hpp"
#include "betaflow/matrix_minors.hpp"
#include "betaflow/poly_flow.hpp"
#include "betaflow/rng.hpp"

namespace {

using namespace betaflow;

RootVector uniform_roots(std::size_t n) {
  InitialMeasureSpec spec;
  spec.n = n;
  return make_initial(spec);
}

void BM_SolveSecular(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RootVector roots = uniform_roots(n);
  RandomStream rng(SeedSpec{1, 0});
  const auto w = dirichlet_weights(n, InverseTemperature::finite(2.0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_secular(roots.roots(), w.values()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveSecular)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_SolveSecularDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RootVector roots = uniform_roots(n);
  RandomStream rng(SeedSpec{1, 0});
  const auto w = dirichlet_weights(n, InverseTemperature::finite(2.0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detail::solve_secular_direct(roots.roots(), w.values()));
  }
}
BENCHMARK(BM_SolveSecularDirect)->RangeMultiplier(4)->Range(16, 4096);

void BM_RandomizedStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RootVector roots = uniform_roots(n);
  RandomStream rng(SeedSpec{2, 0});
  for (auto _ : state) {
    const auto w = dirichlet_weights(n, InverseTemperature::finite(1.0), rng);
    benchmark::DoNotOptimize(randomized_step(roots, w));
  }
}
BENCHMARK(BM_RandomizedStep)->Arg(250)->Arg(1000)->Arg(2000);

void BM_RunChainFinal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RootVector roots = uniform_roots(n);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_chain_final(roots, n / 2, InverseTemperature::finite(2.0), SeedSpec{3, trial++}));
  }
}
BENCHMARK(BM_RunChainFinal)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SymmetricEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(SeedSpec{4, 0});
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  const SymmetricMatrix m(Eigen::MatrixXd(g + g.transpose()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_eigenvalues(m));
  }
}
BENCHMARK(BM_SymmetricEigenvalues)->Arg(16)->Arg(64)->Arg(256);

void BM_MinorSpectrumChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RootVector roots = uniform_roots(n);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minor_spectrum_chain(roots, MatrixEnsemble::Unitary, SeedSpec{5, trial++}));
  }
}
BENCHMARK(BM_MinorSpectrumChain)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
