#include <benchmark/benchmark.h>

#include "fusswalk/bijection.hpp"
#include "fusswalk/canonical.hpp"
#include "fusswalk/chains.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/rng.hpp"
#include "fusswalk/spectral.hpp"

using namespace fusswalk;

namespace {

// A pseudo-random valid path: run the adjacent-move chain from the top state.
DyckPath scrambled_path(int n, std::uint64_t seed, int steps) {
  RngStream rng(seed);
  DyckPath x = top_path(n);
  for (int t = 0; t < steps; ++t) x = am_step(x, rng);
  return x;
}

void BM_FussCatalan(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(fuss_catalan(2, n));
}
BENCHMARK(BM_FussCatalan)->Arg(64)->Arg(1024);

void BM_PathTreeRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DyckPath p = scrambled_path(n, 1, 50 * n);
  for (auto _ : state) {
    const Ncst t = path_to_tree(p);
    benchmark::DoNotOptimize(tree_to_path(t));
  }
}
BENCHMARK(BM_PathTreeRoundTrip)->Arg(16)->Arg(64)->Arg(256);

void BM_FlipStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(2);
  Ncst t = path_to_tree(scrambled_path(n, 3, 50 * n));
  for (auto _ : state) {
    t = fm_step(t, rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_FlipStep)->Arg(8)->Arg(16)->Arg(32);

void BM_BuildPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(4);
  const DyckPath i = scrambled_path(n, 5, 60 * n);
  const auto neighbors = am_neighbors(i);
  const DyckPath f = neighbors[rng.uniform(neighbors.size())];
  for (auto _ : state) benchmark::DoNotOptimize(build_path(i, f));
}
BENCHMARK(BM_BuildPath)->Arg(8)->Arg(16);

void BM_TransitionMatrixFm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(transition_matrix(ChainKind::kFlipMove, n, 6));
}
BENCHMARK(BM_TransitionMatrixFm)->Arg(3)->Arg(4);

void BM_SpectralGapFm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = transition_matrix(ChainKind::kFlipMove, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_gap(m));
}
BENCHMARK(BM_SpectralGapFm)->Arg(3)->Arg(4);

void BM_CoalescenceRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(coalescence_experiment(n, 1, seed++));
}
BENCHMARK(BM_CoalescenceRun)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
