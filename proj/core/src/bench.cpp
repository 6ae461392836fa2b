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

#include "msax/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "msax/encode.hpp"
#include "msax/error.hpp"
#include "msax/match.hpp"
#include "msax/synthetic.hpp"

namespace msax {

using nlohmann::json;

TimingStats summarize(std::vector<double> seconds) {
  TimingStats t;
  t.repetitions = static_cast<int>(seconds.size());
  if (seconds.empty()) return t;
  std::sort(seconds.begin(), seconds.end());
  const std::size_t n = seconds.size();
  t.median = n % 2 ? seconds[n / 2] : 0.5 * (seconds[n / 2 - 1] + seconds[n / 2]);
  t.mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double s : seconds) ss += (s - t.mean) * (s - t.mean);
  t.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  return t;
}

json to_json(const TimingStats& t) {
  return {{"median_s", t.median}, {"mean_s", t.mean}, {"std_s", t.stddev},
          {"repetitions", t.repetitions}};
}

std::vector<IndexPair> sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw InvalidArgumentError("sample_pairs: need at least two items");
  const std::size_t total = n * (n - 1) / 2;
  if (count > total) throw InvalidArgumentError("sample_pairs: not enough distinct pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<IndexPair> seen;
  std::vector<IndexPair> out;
  while (out.size() < count) {
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (seen.insert({i, j}).second) out.emplace_back(i, j);
  }
  return out;
}

ApproximationError approximation_error(std::span<const ManifoldSequence> seqs,
                                       std::span<const IndexPair> pairs,
                                       std::span<const double> geodesic, const Codebook& cb,
                                       int window) {
  if (pairs.size() != geodesic.size() || pairs.empty()) {
    throw InvalidArgumentError("approximation_error: one geodesic distance per pair");
  }
  std::vector<SymbolSequence> encoded;
  encoded.reserve(seqs.size());
  for (const auto& s : seqs) encoded.push_back(encode(s, cb, window));
  ApproximationError out;
  const DtwOptions opts{std::nullopt, false};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const double d_sym =
        window * dtw_symbolic(encoded[i].symbols, encoded[j].symbols, cb.lut(), opts).distance;
    const double diff = std::abs(geodesic[p] - d_sym);
    out.mean_absolute += diff;
    out.mean_relative += geodesic[p] > 0 ? diff / geodesic[p] : (diff > 0 ? 1.0 : 0.0);
  }
  out.mean_absolute /= static_cast<double>(pairs.size());
  out.mean_relative /= static_cast<double>(pairs.size());
  return out;
}

std::vector<TradeoffCell> tradeoff_grid(const TradeoffConfig& cfg) {
  const Manifold manifold = Manifold::parse(cfg.manifold);
  const DatasetFile data = gen_synthetic(manifold, parse_scenario(cfg.scenario), cfg.seed);
  const auto pairs = sample_pairs(data.sequences.size(), cfg.pairs, cfg.seed + 1);
  std::vector<double> geodesic;
  const DtwOptions opts{std::nullopt, false};
  for (const auto& [i, j] : pairs) {
    geodesic.push_back(dtw_geodesic(data.sequences[i], data.sequences[j], opts).distance);
  }
  const std::vector<Point> frames = all_points(data);
  std::vector<TradeoffCell> grid;
  for (std::size_t k : cfg.ks) {
    const Codebook cb = kmeans_geodesic(frames, k, 100, cfg.seed + 2);
    for (int w : cfg.windows) {
      grid.push_back({k, w, approximation_error(data.sequences, pairs, geodesic, cb, w)});
    }
  }
  return grid;
}

namespace {

json environment(const BenchConfig& cfg) {
  json env = {{"repetitions", cfg.repetitions},
              {"seed", cfg.seed},
              {"threads", 1},
              {"hardware_concurrency", std::thread::hardware_concurrency()}};
#if defined(__VERSION__)
  env["compiler"] = __VERSION__;
#endif
#ifdef NDEBUG
  env["assertions"] = false;
#else
  env["assertions"] = true;
#endif
  return env;
}

std::vector<Point> strided(const std::vector<Point>& frames, std::size_t limit) {
  if (frames.size() <= limit) return frames;
  std::vector<Point> out;
  for (std::size_t i = 0; i < limit; ++i) out.push_back(frames[i * frames.size() / limit]);
  return out;
}

ManifoldSequence prefix(const ManifoldSequence& s, std::size_t n) {
  ManifoldSequence out = s;
  out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.points.size())), out.points.end());
  return out;
}

json speed_suite(const BenchConfig& cfg) {
  struct Target {
    const char* name;
    const char* manifold;
  };
  const Target targets[] = {{"shape", "grassmann:10:2"},
                            {"hoof", "sphere:30"},
                            {"skeleton", "se3:19"}};
  const std::size_t lengths[] = {25, 50, 100};
  const DtwOptions opts{std::nullopt, false};
  json out = json::array();

  for (const auto& t : targets) {
    const Manifold manifold = Manifold::parse(t.manifold);
    const std::size_t n_seq = cfg.knn_db + 1;
    const std::size_t per_class = (n_seq + 3) / 4;
    LabeledClassesScenario sc;
    sc.trajectory.classes = 4;
    sc.trajectory.length = 100;
    sc.executions = per_class;
    const DatasetFile data = gen_synthetic(manifold, sc, cfg.seed);
    const Codebook cb = kmeans_geodesic(strided(all_points(data), 1000), 40, 20, cfg.seed);

    std::vector<SymbolSequence> encoded;
    std::size_t frames = 0;
    const TimingStats enc = time_repeated(cfg.repetitions, [&] {
      encoded.clear();
      frames = 0;
      for (const auto& s : data.sequences) {
        encoded.push_back(encode(s, cb, 1));
        frames += s.points.size();
      }
    });

    json sweep = json::array();
    for (std::size_t len : lengths) {
      const ManifoldSequence a = prefix(data.sequences[0], len);
      const ManifoldSequence b = prefix(data.sequences[1], len);
      const auto sa = std::span<const Symbol>(encoded[0].symbols).first(a.points.size());
      const auto sb = std::span<const Symbol>(encoded[1].symbols).first(b.points.size());
      double sink = 0.0;
      reset_geometry_call_count();
      const TimingStats sym = time_repeated(
          cfg.repetitions, [&] { sink += dtw_symbolic(sa, sb, cb.lut(), opts).distance; });
      const std::uint64_t sym_calls = geometry_call_count();
      reset_geometry_call_count();
      const TimingStats geo =
          time_repeated(cfg.repetitions, [&] { sink += dtw_geodesic(a, b, opts).distance; });
      const std::uint64_t geo_calls = geometry_call_count();
      sweep.push_back({{"length", len},
                       {"symbolic", to_json(sym)},
                       {"geodesic", to_json(geo)},
                       {"time_ratio", geo.median > 0 ? sym.median / geo.median : 0.0},
                       {"geometry_calls_symbolic", sym_calls},
                       {"geometry_calls_geodesic", geo_calls},
                       {"checksum", sink}});
    }

    SequenceDatabase db(cb.id());
    std::vector<ManifoldSequence> raw_db;
    const std::size_t db_size = std::min(cfg.knn_db, data.sequences.size() - 1);
    for (std::size_t i = 1; i <= db_size; ++i) {
      db.add(encoded[i]);
      raw_db.push_back(data.sequences[i]);
    }
    const std::size_t k = std::min<std::size_t>(5, db_size);
    std::vector<Neighbor> sym_nn;
    std::vector<Neighbor> geo_nn;
    reset_geometry_call_count();
    const TimingStats knn_sym = time_repeated(
        cfg.repetitions, [&] { sym_nn = knn(encoded[0], db, cb, k, opts); });
    const std::uint64_t knn_sym_calls = geometry_call_count();
    const TimingStats knn_geo = time_repeated(
        cfg.repetitions, [&] { geo_nn = knn_geodesic(data.sequences[0], raw_db, k, opts); });

    out.push_back(
        {{"name", t.name},
         {"manifold", manifold.to_string()},
         {"codebook_k", cb.size()},
         {"encoding", {{"frames", frames}, {"timing", to_json(enc)},
                       {"frames_per_second", enc.median > 0 ? frames / enc.median : 0.0}}},
         {"dtw_sweep", sweep},
         {"knn",
          {{"db_size", db_size},
           {"k", k},
           {"symbolic", to_json(knn_sym)},
           {"geodesic", to_json(knn_geo)},
           {"time_ratio", knn_geo.median > 0 ? knn_sym.median / knn_geo.median : 0.0},
           {"geometry_calls_symbolic", knn_sym_calls},
           {"top1_agrees", !sym_nn.empty() && !geo_nn.empty() && sym_nn[0].id == geo_nn[0].id}}}});
  }
  return out;
}

json tradeoff_suite(const BenchConfig& cfg) {
  TradeoffConfig tc;
  tc.seed = cfg.seed;
  json grid = json::array();
  for (const auto& cell : tradeoff_grid(tc)) {
    grid.push_back({{"k", cell.k},
                    {"window", cell.window},
                    {"mean_relative_error", cell.error.mean_relative},
                    {"mean_absolute_error", cell.error.mean_absolute}});
  }
  return {{"manifold", tc.manifold},
          {"scenario", tc.scenario},
          {"pairs", tc.pairs},
          {"grid", grid}};
}

json bits_suite() {
  json rows = json::array();
  const std::size_t n = 100;
  for (std::size_t dim : {24, 30, 100, 304}) {
    for (std::size_t k : {16, 32, 64}) {
      for (int w : {1, 2, 3}) {
        const BitBudget b = bit_budget(n, window_count(n, w), k, dim);
        rows.push_back({{"frames", n},
                        {"dim", dim},
                        {"k", k},
                        {"window", w},
                        {"original_bits", b.original_bits},
                        {"symbolic_bits", b.symbolic_bits},
                        {"compression_ratio", b.compression_ratio}});
      }
    }
  }
  return rows;
}

json entropy_suite(const BenchConfig& cfg) {
  struct Target {
    const char* manifold;
    std::size_t points;
  };
  const Target targets[] = {{"sphere:8", 10000}, {"grassmann:10:2", 3000}, {"se3:3", 3000}};
  json out = json::array();
  for (const auto& t : targets) {
    ClustersScenario sc;
    sc.clusters = 3;
    sc.spread = 0.2;
    sc.skew = {0.8, 0.15, 0.05};
    sc.points = t.points;
    const DatasetFile data = gen_synthetic(Manifold::parse(t.manifold), sc, cfg.seed);
    const auto& frames = data.sequences.front().points;
    json curves = json::object();
    for (auto rule : {WinRateRule::kBiasedWinner, WinRateRule::kUnbiasedWinner}) {
      ConscienceConfig cc;
      cc.k = 10;
      cc.seed = cfg.seed;
      cc.rule = rule;
      ConscienceTrace trace;
      conscience_symbols(frames, cc, std::nullopt, &trace);
      curves[rule == WinRateRule::kBiasedWinner ? "biased" : "unbiased"] = {
          {"entropy_per_pass", trace.entropy_per_pass},
          {"max_win_rate_drift", trace.max_win_rate_drift}};
    }
    const KMeansResult km = kmeans_cluster(frames, 10, {100, cfg.seed, std::nullopt});
    out.push_back({{"manifold", t.manifold},
                   {"points", t.points},
                   {"k", 10},
                   {"max_entropy", std::log2(10.0)},
                   {"conscience", curves},
                   {"kmeans_entropy", entropy(km.labels, 10)}});
  }
  return out;
}

}  // namespace

json run_bench(const BenchConfig& cfg) {
  if (cfg.repetitions < 20) throw InvalidArgumentError("bench: at least 20 repetitions");
  if (cfg.knn_db < 1) throw InvalidArgumentError("bench: knn database must be nonempty");
  json report = {{"suite", cfg.suite}, {"environment", environment(cfg)}};
  if (cfg.suite == "speed") {
    report["results"] = speed_suite(cfg);
  } else if (cfg.suite == "tradeoff") {
    report["results"] = tradeoff_suite(cfg);
  } else if (cfg.suite == "bits") {
    report["results"] = bits_suite();
  } else if (cfg.suite == "entropy") {
    report["results"] = entropy_suite(cfg);
  } else {
    throw InvalidArgumentError("bench: unknown suite '" + cfg.suite + "'");
  }
  return report;
}

}  // namespace msax
