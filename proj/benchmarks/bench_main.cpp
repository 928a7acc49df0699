#include <random>

#include <benchmark/benchmark.h>

#include "rineq/krein.hpp"
#include "rineq/migration.hpp"
#include "rineq/riccati.hpp"

namespace {

using namespace rineq;

RiccatiProblem example() {
  return {from_rows({{1, -1, 1}, {0, 1, 1}, {0, 0, 1}}), from_rows({{1, 0}, {1, 0}, {0, 1}}),
          from_rows({{6, -2, -2}, {-2, -3, -2}, {-2, -2, -3.9}}), from_rows({{-10, 0}, {0, 0.1}})};
}

ComplexMatrix random_matrix(Eigen::Index n) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

void BM_EigenGeneral(benchmark::State& state) {
  const ComplexMatrix m = random_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_general(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenGeneral)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);

void BM_StableBasis(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const ComplexMatrix m = random_matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(stable_invariant_basis(m, HalfPlane::kLeft));
}
BENCHMARK(BM_StableBasis)->RangeMultiplier(2)->Range(4, 64);

void BM_VerdictExample(benchmark::State& state) {
  const RiccatiProblem p = example();
  for (auto _ : state) benchmark::DoNotOptimize(verdict(p));
}
BENCHMARK(BM_VerdictExample);

void BM_SolveInequalityExample(benchmark::State& state) {
  const RiccatiProblem p = example();
  for (auto _ : state) benchmark::DoNotOptimize(solve_inequality(p, SolutionMode::kStabilizing));
}
BENCHMARK(BM_SolveInequalityExample);

void BM_TraceSymplecticUnit(benchmark::State& state) {
  const HamiltonianPair hp = HamiltonianPair::from_matrix(symplectic_unit(1));
  const ProbeMatrix probe = probe_from_matrix(ComplexMatrix::Identity(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(trace_eigenvalues(hp, probe, 2.0, 101));
}
BENCHMARK(BM_TraceSymplecticUnit);

}  // namespace

BENCHMARK_MAIN();
