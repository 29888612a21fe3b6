// Copyright 2026 The wlra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "wlra/analysis.hpp"
#include "wlra/biclique.hpp"
#include "wlra/reductions.hpp"
#include "wlra/solver.hpp"

namespace {

using namespace wlra;

const Matrix kM1 = Matrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
const WeightMatrix kW1(Matrix::from_rows({{1, 100, 2}, {100, 1, 2}, {1, 1, 1}}));

BipartiteGraph random_graph(std::size_t s, std::size_t t, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(density);
  return BipartiteGraph(Matrix::generate(s, t, [&](auto, auto) { return edge(rng) ? 1.0 : 0.0; }));
}

void BM_Landscape(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(landscape_grid(kM1, kW1, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Landscape)->Arg(51)->Arg(201);

void BM_SolveRankOne(benchmark::State& state) {
  SolveConfig cfg;
  cfg.starts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_rank_one(kM1, kW1, cfg));
}
BENCHMARK(BM_SolveRankOne)->Arg(1)->Arg(64);

void BM_SolveRankOneW1d(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)),
                              static_cast<std::size_t>(state.range(0)), 0.6, 3);
  const auto inst = build_w1d(g, 1e4);
  SolveConfig cfg;
  cfg.starts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(solve_rank_one(inst.m, inst.w, cfg));
}
BENCHMARK(BM_SolveRankOneW1d)->Arg(8)->Arg(32);

void BM_SolveRankR(benchmark::State& state) {
  const auto inst = build_block_rank_r(random_graph(6, 6, 0.6, 4), 2, 1e3);
  SolveConfig cfg;
  cfg.starts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(solve_rank_r(inst.m, inst.w, 2, cfg));
}
BENCHMARK(BM_SolveRankR);

void BM_MaxBiclique(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n, 0.5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(max_edge_biclique(g));
}
BENCHMARK(BM_MaxBiclique)->Arg(8)->Arg(16)->Arg(20);

void BM_BuildMd1d(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n, 0.7, 6);
  for (auto _ : state) benchmark::DoNotOptimize(build_md1d(g, 1e6));
}
BENCHMARK(BM_BuildMd1d)->Arg(10)->Arg(40);

void BM_SampleCandidates(benchmark::State& state) {
  const auto g = random_graph(3, 3, 0.6, 7);
  const auto inst = build_md1d(g, lemma6_threshold(g.edge_count(), 1.0) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_feasible_candidates(inst, 1000));
}
BENCHMARK(BM_SampleCandidates);

}  // namespace

BENCHMARK_MAIN();
