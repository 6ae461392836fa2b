// Copyright 2026 The msax Authors
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


// Micro benchmarks for the hot paths: geometry primitives, window encoding
// and symbolic vs geodesic DTW.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "msax/codebook.hpp"
#include "msax/encode.hpp"
#include "msax/geometry.hpp"
#include "msax/match.hpp"
#include "msax/synthetic.hpp"

namespace {

const char* const kManifolds[] = {"sphere:30", "grassmann:10:2", "se3:19"};

msax::Manifold manifold_arg(const benchmark::State& state) {
  return msax::Manifold::parse(kManifolds[state.range(0)]);
}

msax::DatasetFile trajectories(const msax::Manifold& m, std::size_t length) {
  msax::LabeledClassesScenario sc;
  sc.trajectory.classes = 2;
  sc.trajectory.length = length;
  sc.executions = 1;
  return msax::gen_synthetic(m, sc, 11);
}

msax::Codebook codebook_for(const msax::DatasetFile& data, std::size_t k) {
  std::vector<msax::Point> pts;
  for (const auto& s : data.sequences) pts.insert(pts.end(), s.points.begin(), s.points.end());
  return msax::kmeans_geodesic(pts, k, 20, 12);
}

void BM_Distance(benchmark::State& state) {
  const msax::Manifold m = manifold_arg(state);
  std::mt19937_64 rng(1);
  const msax::Point a = msax::random_point(m, rng);
  const msax::Point b = msax::random_point(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(msax::distance(a, b));
  state.SetLabel(kManifolds[state.range(0)]);
}
BENCHMARK(BM_Distance)->DenseRange(0, 2);

void BM_LogExp(benchmark::State& state) {
  const msax::Manifold m = manifold_arg(state);
  std::mt19937_64 rng(2);
  const msax::Point a = msax::random_point(m, rng);
  const msax::Point b = msax::random_point(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(msax::exp_map(a, msax::log_map(a, b)));
  state.SetLabel(kManifolds[state.range(0)]);
}
BENCHMARK(BM_LogExp)->DenseRange(0, 2);

void BM_Encode(benchmark::State& state) {
  const msax::Manifold m = manifold_arg(state);
  const msax::DatasetFile data = trajectories(m, 100);
  const msax::Codebook cb = codebook_for(data, 40);
  const int window = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(msax::encode(data.sequences[0], cb, window));
  state.SetItemsProcessed(state.iterations() * 100);
  state.SetLabel(kManifolds[state.range(0)]);
}
BENCHMARK(BM_Encode)->ArgsProduct({{0, 1, 2}, {1, 5}});

void BM_DtwGeodesic(benchmark::State& state) {
  const msax::Manifold m = manifold_arg(state);
  const auto len = static_cast<std::size_t>(state.range(1));
  const msax::DatasetFile data = trajectories(m, len);
  for (auto _ : state) {
    benchmark::DoNotOptimize(msax::dtw_geodesic(data.sequences[0], data.sequences[1]).distance);
  }
  state.SetLabel(kManifolds[state.range(0)]);
}
BENCHMARK(BM_DtwGeodesic)->ArgsProduct({{0, 1, 2}, {25, 50, 100}})->Unit(benchmark::kMicrosecond);

void BM_DtwSymbolic(benchmark::State& state) {
  const msax::Manifold m = manifold_arg(state);
  const auto len = static_cast<std::size_t>(state.range(1));
  const msax::DatasetFile data = trajectories(m, len);
  const msax::Codebook cb = codebook_for(data, 40);
  const msax::SymbolSequence p = msax::encode(data.sequences[0], cb, 1);
  const msax::SymbolSequence q = msax::encode(data.sequences[1], cb, 1);
  for (auto _ : state) benchmark::DoNotOptimize(msax::dtw_symbolic(p, q, cb).distance);
  state.SetLabel(kManifolds[state.range(0)]);
}
BENCHMARK(BM_DtwSymbolic)->ArgsProduct({{0, 1, 2}, {25, 50, 100}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
