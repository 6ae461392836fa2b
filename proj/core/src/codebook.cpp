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

#include "msax/codebook.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "msax/error.hpp"
#include "msax/stats.hpp"

namespace msax {
namespace {

constexpr std::string_view kBase62 =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

void require_common_manifold(std::span<const Point> points, const Manifold& manifold) {
  for (const auto& p : points) {
    if (!(p.manifold == manifold)) {
      throw IncompatibleManifoldsError("expected " + manifold.to_string() + " points, got " +
                                       p.manifold.to_string());
    }
  }
}

// Best-effort mean for a cluster; a degenerate or cut-locus window keeps the
// previous center.
Point cluster_mean(std::span<const Point> members, const Point& fallback) {
  try {
    return karcher_mean(members).mean;
  } catch (const DegenerateError&) {
    return fallback;
  } catch (const InjectivityError&) {
    return fallback;
  }
}

std::vector<Point> kmeans_plus_plus(std::span<const Point> data, std::size_t k,
                                    std::mt19937_64& rng) {
  std::vector<Point> centers;
  centers.reserve(k);
  std::vector<bool> used(data.size(), false);
  std::uniform_int_distribution<std::size_t> first(0, data.size() - 1);
  std::size_t pick = first(rng);
  std::vector<double> d2(data.size(), std::numeric_limits<double>::infinity());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  while (true) {
    used[pick] = true;
    centers.push_back(data[pick]);
    if (centers.size() == k) break;
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double d = distance(data[i], centers.back());
      d2[i] = std::min(d2[i], d * d);
      if (!used[i]) total += d2[i];
    }
    if (total <= 0.0) {
      // All remaining points coincide with a center; take the next unused one.
      pick = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
      continue;
    }
    const double target = unit(rng) * total;
    double acc = 0.0;
    pick = data.size();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (used[i]) continue;
      acc += d2[i];
      pick = i;
      if (acc >= target && d2[i] > 0.0) break;
    }
  }
  return centers;
}

double mean_squared_pairwise_distance(std::span<const Point> data, std::mt19937_64& rng) {
  const std::size_t n = data.size();
  if (n < 2) return 1.0;
  constexpr std::size_t kMaxPairs = 2000;
  double sum = 0.0;
  std::size_t count = 0;
  if (n * (n - 1) / 2 <= kMaxPairs) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = distance(data[i], data[j]);
        sum += d * d;
        ++count;
      }
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (count < kMaxPairs) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i == j) continue;
      const double d = distance(data[i], data[j]);
      sum += d * d;
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  return mean > 0.0 ? mean : 1.0;
}

double squared_cost(const Point& center, std::span<const Point> members) {
  double sum = 0.0;
  for (const auto& p : members) {
    const double d = distance(center, p);
    sum += d * d;
  }
  return sum;
}

std::vector<Symbol> nearest_labels(std::span<const Point> data, std::span<const Point> symbols) {
  std::vector<Symbol> labels(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) labels[i] = assign(data[i], symbols);
  return labels;
}

}  // namespace

Codebook::Codebook(Manifold manifold, std::vector<Point> symbols, TrainingMeta meta)
    : manifold_(manifold), symbols_(std::move(symbols)), meta_(std::move(meta)) {
  if (symbols_.size() < 2) throw InvalidArgumentError("a codebook needs at least two symbols");
  require_common_manifold(symbols_, manifold_);
  for (const auto& s : symbols_) require_valid(s);
  lut_ = build_lut(symbols_);
  id_ = content_hash(manifold_, symbols_);
}

std::string Codebook::token(Symbol s) const {
  if (s >= symbols_.size()) throw InvalidArgumentError("symbol index out of range");
  if (symbols_.size() <= kBase62.size()) return std::string(1, kBase62[s]);
  return std::to_string(s);
}

std::string Codebook::render(std::span<const Symbol> symbols) const {
  std::string out;
  const bool compact = symbols_.size() <= kBase62.size();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += token(symbols[i]);
  }
  return out;
}

std::vector<Symbol> Codebook::parse(std::string_view text) const {
  std::vector<Symbol> out;
  if (symbols_.size() <= kBase62.size()) {
    for (char c : text) {
      const auto pos = kBase62.find(c);
      if (pos == std::string_view::npos || pos >= symbols_.size()) {
        throw InvalidArgumentError(std::string("unknown symbol token '") + c + "'");
      }
      out.push_back(static_cast<Symbol>(pos));
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const auto comma = text.find(',', start);
    const auto tok = text.substr(start, comma - start);
    Symbol value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value >= symbols_.size()) {
      throw InvalidArgumentError("unknown symbol token '" + std::string(tok) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string content_hash(const Manifold& manifold, std::span<const Point> points) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (char c : manifold.to_string()) mix(static_cast<std::uint8_t>(c));
  for (const auto& p : points) {
    for (double v : p.data) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) mix(static_cast<std::uint8_t>(bits >> (8 * b)));
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Eigen::MatrixXd build_lut(std::span<const Point> symbols) {
  const auto k = static_cast<Eigen::Index>(symbols.size());
  Eigen::MatrixXd lut = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double d = distance(symbols[static_cast<std::size_t>(i)],
                                symbols[static_cast<std::size_t>(j)]);
      lut(i, j) = d;
      lut(j, i) = d;
    }
  }
  return lut;
}

Symbol assign(const Point& p, std::span<const Point> symbols) {
  if (symbols.empty()) throw InvalidArgumentError("assign: empty symbol set");
  Symbol best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const double d = distance(p, symbols[j]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<Symbol>(j);
    }
  }
  return best;
}

Symbol assign(const Point& p, const Codebook& cb) {
  if (!(p.manifold == cb.manifold())) {
    throw IncompatibleManifoldsError("assign: point is on " + p.manifold.to_string() +
                                     ", codebook on " + cb.manifold().to_string());
  }
  return assign(p, cb.symbols());
}

double entropy(std::span<const Symbol> labels, std::size_t k) {
  if (labels.empty()) throw InvalidArgumentError("entropy of an empty label list");
  std::vector<std::size_t> counts(k, 0);
  for (Symbol s : labels) {
    if (s >= k) throw InvalidArgumentError("label " + std::to_string(s) + " out of range");
    ++counts[s];
  }
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

KMeansResult kmeans_cluster(std::span<const Point> data, std::size_t k,
                            const KMeansOptions& options) {
  if (k < 1 || data.size() < k) {
    throw InvalidArgumentError("kmeans: need at least k = " + std::to_string(k) + " points");
  }
  if (options.max_iters < 1) throw InvalidArgumentError("kmeans: max_iters must be >= 1");
  const Manifold manifold = data.front().manifold;
  require_common_manifold(data, manifold);

  KMeansResult result;
  std::mt19937_64 rng(options.seed);
  if (options.init) {
    if (options.init->size() != k) throw InvalidArgumentError("kmeans: init has wrong size");
    require_common_manifold(*options.init, manifold);
    result.centers = *options.init;
  } else {
    result.centers = kmeans_plus_plus(data, k, rng);
  }

  const std::size_t n = data.size();
  std::vector<Symbol> labels(n, 0);
  std::vector<double> dist(n, 0.0);
  std::vector<Symbol> previous;
  while (true) {
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = distance(data[i], result.centers[c]);
        if (d < best) {
          best = d;
          labels[i] = static_cast<Symbol>(c);
        }
      }
      dist[i] = best;
      objective += best * best;
    }
    result.objective.push_back(objective);
    if (labels == previous || result.iterations == options.max_iters) break;
    previous = labels;

    std::vector<std::size_t> sizes(k, 0);
    for (Symbol s : labels) ++sizes[s];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      // Re-seed an empty cluster at the point farthest from its own center.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] < 2) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) break;
      --sizes[labels[far]];
      labels[far] = static_cast<Symbol>(c);
      sizes[c] = 1;
      dist[far] = 0.0;
      result.centers[c] = data[far];
    }

    std::vector<std::vector<Point>> members(k);
    for (std::size_t i = 0; i < n; ++i) members[labels[i]].push_back(data[i]);
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c].empty()) continue;
      // The group barycenter on ProductSE3 need not minimize the squared
      // left-invariant distances, so a mean that raises the cluster cost is
      // rejected; this keeps the objective non-increasing on every manifold.
      Point mean = cluster_mean(members[c], result.centers[c]);
      if (squared_cost(mean, members[c]) <= squared_cost(result.centers[c], members[c])) {
        result.centers[c] = std::move(mean);
      }
    }
    ++result.iterations;
  }

  result.labels = labels;
  result.sizes.assign(k, 0);
  for (Symbol s : labels) ++result.sizes[s];
  return result;
}

Codebook kmeans_geodesic(std::span<const Point> data, std::size_t k, int max_iters,
                         std::uint64_t seed) {
  auto result = kmeans_cluster(data, k, {max_iters, seed, std::nullopt});
  TrainingMeta meta{"kmeans",
                    {{"k", static_cast<double>(k)}, {"max_iters", static_cast<double>(max_iters)}},
                    seed};
  return Codebook(data.front().manifold, std::move(result.centers), std::move(meta));
}

std::vector<Point> conscience_symbols(std::span<const Point> data, const ConscienceConfig& cfg,
                                      std::optional<std::vector<Point>> init,
                                      ConscienceTrace* trace) {
  const std::size_t k = cfg.k;
  if (k < 1 || data.size() < k) {
    throw InvalidArgumentError("conscience: need at least K = " + std::to_string(k) + " points");
  }
  if (!(cfg.win_update > 0.0 && cfg.win_update < 1.0)) {
    throw InvalidArgumentError("conscience: win update factor B must lie in (0, 1)");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0) || !(cfg.alpha_final > 0.0 && cfg.alpha_final < 1.0)) {
    throw InvalidArgumentError("conscience: learning rate must lie in (0, 1)");
  }
  if (!(cfg.conscience >= 0.0)) throw InvalidArgumentError("conscience: C must be >= 0");
  if (cfg.max_passes < 1) throw InvalidArgumentError("conscience: max_passes must be >= 1");
  const Manifold manifold = data.front().manifold;
  require_common_manifold(data, manifold);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<Point> symbols;
  if (init) {
    if (init->size() != k) throw InvalidArgumentError("conscience: init has wrong size");
    require_common_manifold(*init, manifold);
    symbols = std::move(*init);
  } else {
    std::vector<std::size_t> pick = order;
    std::shuffle(pick.begin(), pick.end(), rng);
    for (std::size_t i = 0; i < k; ++i) symbols.push_back(data[pick[i]]);
  }

  const double c_eff = cfg.scale_conscience_by_data
                           ? cfg.conscience * mean_squared_pairwise_distance(data, rng)
                           : cfg.conscience;
  const double inv_k = 1.0 / static_cast<double>(k);
  std::vector<double> p(k, inv_k);
  std::vector<double> bias(k, 0.0);
  std::vector<double> d2(k);
  double max_drift = 0.0;

  for (int pass = 0; pass < cfg.max_passes; ++pass) {
    const double t = cfg.max_passes > 1 ? static_cast<double>(pass) / (cfg.max_passes - 1) : 0.0;
    const double alpha = cfg.alpha + (cfg.alpha_final - cfg.alpha) * t;
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t idx : order) {
      const Point& x = data[idx];
      std::size_t z = 0;
      std::size_t y = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const double d = distance(symbols[i], x);
        d2[i] = d * d;
        if (d2[i] - bias[i] < d2[z] - bias[z]) z = i;
        if (d2[i] < d2[y]) y = i;
      }

      try {
        Tangent step = log_map(symbols[z], x);
        step.data *= alpha;
        symbols[z] = exp_map(symbols[z], step);
      } catch (const InjectivityError&) {
        // Cut-locus sample for this symbol: leave it in place.
      }

      const std::size_t winner = cfg.rule == WinRateRule::kBiasedWinner ? z : y;
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double won = i == winner ? 1.0 : 0.0;
        p[i] += cfg.win_update * (won - p[i]);
        bias[i] = c_eff * (inv_k - p[i]);
        sum += p[i];
      }
      max_drift = std::max(max_drift, std::abs(sum - 1.0));
    }

    if (trace) {
      const auto labels = nearest_labels(data, symbols);
      trace->entropy_per_pass.push_back(entropy(labels, k));
    }
  }

  if (trace) {
    trace->max_win_rate_drift = max_drift;
    trace->win_rates = p;
    trace->effective_conscience = c_eff;
  }
  return symbols;
}

Codebook conscience_learn(std::span<const Point> data, const ConscienceConfig& cfg,
                          std::optional<std::vector<Point>> init, ConscienceTrace* trace) {
  auto symbols = conscience_symbols(data, cfg, std::move(init), trace);
  TrainingMeta meta{"conscience",
                    {{"k", static_cast<double>(cfg.k)},
                     {"alpha", cfg.alpha},
                     {"alpha_final", cfg.alpha_final},
                     {"B", cfg.win_update},
                     {"C", cfg.conscience},
                     {"passes", static_cast<double>(cfg.max_passes)}},
                    cfg.seed};
  return Codebook(data.front().manifold, std::move(symbols), std::move(meta));
}

std::vector<std::size_t> subcluster_counts(std::span<const std::size_t> cluster_sizes, int r) {
  if (cluster_sizes.empty()) throw InvalidArgumentError("subcluster_counts: no clusters");
  if (r < 1) throw InvalidArgumentError("subcluster_counts: r must be >= 1");
  const std::size_t smallest = *std::min_element(cluster_sizes.begin(), cluster_sizes.end());
  if (smallest == 0) throw DegenerateError("subcluster_counts: empty stage-1 cluster");
  std::vector<std::size_t> counts;
  counts.reserve(cluster_sizes.size());
  const auto rr = static_cast<std::size_t>(r);
  for (std::size_t n : cluster_sizes) counts.push_back((n * rr + smallest - 1) / smallest);
  return counts;
}

Codebook hybrid_learn(std::span<const Point> data, std::size_t stage1_k, int r,
                      const ConscienceConfig& cfg, HybridTrace* trace) {
  if (stage1_k < 1) throw InvalidArgumentError("hybrid: stage1_k must be >= 1");
  auto stage1 = kmeans_cluster(data, stage1_k, {100, cfg.seed, std::nullopt});
  const auto counts = subcluster_counts(stage1.sizes, r);

  std::vector<std::vector<Point>> members(stage1_k);
  for (std::size_t i = 0; i < data.size(); ++i) members[stage1.labels[i]].push_back(data[i]);

  std::vector<Point> symbols;
  for (std::size_t c = 0; c < stage1_k; ++c) {
    if (counts[c] > members[c].size()) {
      throw InvalidArgumentError("hybrid: cluster " + std::to_string(c) + " has " +
                                 std::to_string(members[c].size()) + " points but needs " +
                                 std::to_string(counts[c]) + " sub-clusters");
    }
    ConscienceConfig sub = cfg;
    sub.k = counts[c];
    sub.seed = cfg.seed + 1 + c;
    std::optional<std::vector<Point>> init;
    if (counts[c] == 1) init = std::vector<Point>{stage1.centers[c]};
    auto sub_symbols = conscience_symbols(members[c], sub, std::move(init));
    std::move(sub_symbols.begin(), sub_symbols.end(), std::back_inserter(symbols));
  }

  if (trace) {
    trace->stage1_sizes = stage1.sizes;
    trace->subcluster_counts = counts;
  }
  TrainingMeta meta{"hybrid",
                    {{"stage1_k", static_cast<double>(stage1_k)},
                     {"r", static_cast<double>(r)},
                     {"k", static_cast<double>(symbols.size())},
                     {"alpha", cfg.alpha},
                     {"alpha_final", cfg.alpha_final},
                     {"B", cfg.win_update},
                     {"C", cfg.conscience},
                     {"passes", static_cast<double>(cfg.max_passes)}},
                    cfg.seed};
  return Codebook(data.front().manifold, std::move(symbols), std::move(meta));
}

}  // namespace msax
