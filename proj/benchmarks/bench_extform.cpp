#include <benchmark/benchmark.h>

#include "extform/bounds.hpp"
#include "extform/constructions.hpp"
#include "extform/kernel.hpp"
#include "extform/lp.hpp"
#include "extform/slack.hpp"
#include "extform/zoo.hpp"

using namespace extform;

static void BM_LpPermutahedron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HPoly p = zoo::permutahedron_hrep(n);
  RatVector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<long>(i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(lp_solve(c, Sense::Maximize, p));
}
BENCHMARK(BM_LpPermutahedron)->DenseRange(3, 6);

static void BM_VerticesCube(benchmark::State& state) {
  const HPoly c = zoo::cube_hrep(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vertices(c));
}
BENCHMARK(BM_VerticesCube)->DenseRange(2, 6);

static void BM_HullPermutahedron(benchmark::State& state) {
  const VPoly v = zoo::permutahedron_vrep(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hull(v));
}
BENCHMARK(BM_HullPermutahedron)->DenseRange(3, 4);

static void BM_RemoveRedundancyMatching(benchmark::State& state) {
  const HPoly m = zoo::matching_hrep(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(remove_redundancy(m));
}
BENCHMARK(BM_RemoveRedundancyMatching)->DenseRange(3, 5);

static void BM_VerifyBirkhoff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HPoly p = zoo::permutahedron_hrep(n);
  const Extension ext = birkhoff_extension(n);
  for (auto _ : state) benchmark::DoNotOptimize(verify_extension(p, ext));
}
BENCHMARK(BM_VerifyBirkhoff)->DenseRange(2, 4);

static void BM_VerifyKnapsackFlow(benchmark::State& state) {
  const std::vector<long> w = {2, 3, 4, 5};
  const Extension ext = knapsack_flow_extension(w, 8);
  const VPoly k = zoo::knapsack_vrep(w, 8);
  for (auto _ : state) benchmark::DoNotOptimize(verify_extension(k, ext));
}
BENCHMARK(BM_VerifyKnapsackFlow);

static void BM_RectangleCoverCube(benchmark::State& state) {
  const HPoly c = zoo::cube_hrep(static_cast<std::size_t>(state.range(0)));
  const SlackMatrix s = slack_matrix(c, vertices(c));
  for (auto _ : state) benchmark::DoNotOptimize(rectangle_cover_min(s));
}
BENCHMARK(BM_RectangleCoverCube)->DenseRange(2, 3);

static void BM_BoundsPermutahedron3(benchmark::State& state) {
  const HPoly p = zoo::permutahedron_hrep(3);
  const VPoly v = zoo::permutahedron_vrep(3);
  const std::vector<Extension> known = {birkhoff_extension(3)};
  for (auto _ : state) benchmark::DoNotOptimize(xc_bounds(p, v, known));
}
BENCHMARK(BM_BoundsPermutahedron3);

BENCHMARK_MAIN();
