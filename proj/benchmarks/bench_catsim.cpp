// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "catsim/catsim.hpp"

using namespace catsim;

static void BM_EvolveTwoMode(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0));
  auto bell = bell_cat_state(a, a);
  NonlinearUnitary u(4, PiMultiple(3, 8), ModeLabel::A);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(bell, u));
  state.counters["dim"] = static_cast<double>(bell.amplitudes().size());
}
BENCHMARK(BM_EvolveTwoMode)->Arg(2)->Arg(3)->Arg(5);

static void BM_EvolveGenericTime(benchmark::State& state) {
  auto s = coherent_state(static_cast<double>(state.range(0)));
  NonlinearUnitary u(4, 0.7351);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s, u));
}
BENCHMARK(BM_EvolveGenericTime)->Arg(3)->Arg(10);

static void BM_HermiteBasis(benchmark::State& state) {
  auto grid = Grid1D::default_for(3, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(basis_matrix(grid, 60));
}
BENCHMARK(BM_HermiteBasis)->Arg(241)->Arg(1201);

static void BM_JointDensity(benchmark::State& state) {
  auto grid = Grid1D::default_for(2, 2, static_cast<std::size_t>(state.range(0)));
  auto s = evolve(bell_cat_state(2, 2), NonlinearUnitary(2, PiMultiple(1, 2), ModeLabel::A));
  for (auto _ : state) benchmark::DoNotOptimize(joint_density(s, Axis::P, Axis::X, grid, grid));
}
BENCHMARK(BM_JointDensity)->Arg(241)->Arg(1201)->Unit(benchmark::kMillisecond);

static void BM_HalfLineWeights(benchmark::State& state) {
  auto grid = Grid1D::symmetric(10, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid.half_line_weights(Sign::Negative));
}
BENCHMARK(BM_HalfLineWeights)->Arg(1201);

static void BM_Eraser(benchmark::State& state) {
  auto c = ExperimentConfig::eraser_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(run_eraser(c));
}
BENCHMARK(BM_Eraser)->Unit(benchmark::kMillisecond);

static void BM_LeggettGarg(benchmark::State& state) {
  auto c = ExperimentConfig::leggett_garg_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(run_leggett_garg(2, 2, c));
}
BENCHMARK(BM_LeggettGarg)->Unit(benchmark::kMillisecond);

static void BM_DimensionWitness(benchmark::State& state) {
  auto c = ExperimentConfig::dimension_witness_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(run_dimension_witness(DwAngles::macroscopic(), 3, c));
}
BENCHMARK(BM_DimensionWitness)->Unit(benchmark::kMillisecond);

static void BM_QFunctionGrid(benchmark::State& state) {
  auto seq = dw_q_sequence(3, 4, PiMultiple(1, 4), PiMultiple(-1, 8), false);
  auto grid = default_q_grid(3);
  for (auto _ : state) benchmark::DoNotOptimize(q_grid(seq[1], grid, grid));
}
BENCHMARK(BM_QFunctionGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
