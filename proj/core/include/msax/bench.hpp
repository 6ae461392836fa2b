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

#ifndef MSAX_BENCH_HPP
#define MSAX_BENCH_HPP

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "msax/codebook.hpp"
#include "msax/stats.hpp"

namespace msax {

struct TimingStats {
  double median = 0.0;  // seconds
  double mean = 0.0;
  double stddev = 0.0;
  int repetitions = 0;
};

TimingStats summarize(std::vector<double> seconds);

template <typename F>
TimingStats time_repeated(int repetitions, F&& f) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  return summarize(std::move(samples));
}

nlohmann::json to_json(const TimingStats& t);

using IndexPair = std::pair<std::size_t, std::size_t>;

/// `count` distinct unordered pairs (i < j) of indices below n.
std::vector<IndexPair> sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed);

struct ApproximationError {
  double mean_relative = 0.0;  // mean of |d_geo - d_sym| / d_geo
  double mean_absolute = 0.0;  // mean of |d_geo - d_sym|
};

/// d_sym is W times the LUT-cost DTW between the encoded sequences, so that
/// each symbol stands for the W frames it summarizes; d_geo is the geodesic
/// DTW between the raw sequences, passed in precomputed per pair.
ApproximationError approximation_error(std::span<const ManifoldSequence> seqs,
                                       std::span<const IndexPair> pairs,
                                       std::span<const double> geodesic, const Codebook& cb,
                                       int window);

struct TradeoffCell {
  std::size_t k = 0;
  int window = 1;
  ApproximationError error;
};

struct TradeoffConfig {
  std::string manifold = "sphere:4";
  std::string scenario = "classes:c=5,n=10,len=60,noise=0.02,amp=0.6,sep=1.0,style=0.5";
  std::vector<std::size_t> ks{10, 20, 40, 60};
  std::vector<int> windows{1, 2, 3, 5};
  std::size_t pairs = 50;
  std::uint64_t seed = 7;
};

/// K x W grid of approximation errors; codebooks come from geodesic k-means
/// on all frames of the generated suite.
std::vector<TradeoffCell> tradeoff_grid(const TradeoffConfig& cfg);

struct BenchConfig {
  std::string suite = "speed";  // speed | tradeoff | bits | entropy
  int repetitions = 20;
  std::uint64_t seed = 1;
  /// Database size for the kNN timing (the query is held out).
  std::size_t knn_db = 10;
};

/// Runs one suite and returns its machine-readable report.
nlohmann::json run_bench(const BenchConfig& cfg);

}  // namespace msax

#endif  // MSAX_BENCH_HPP
