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

#ifndef MSAX_CODEBOOK_HPP
#define MSAX_CODEBOOK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msax/geometry.hpp"

namespace msax {

using Symbol = std::uint32_t;

struct TrainingMeta {
  std::string method;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

/// K learned prototypes plus their pairwise geodesic distance table.
///
/// A Codebook is immutable once built; the id is a content hash of the
/// manifold and the prototype coordinates, so encoded sequences can refer to
/// the exact dictionary they were produced with.
class Codebook {
 public:
  Codebook(Manifold manifold, std::vector<Point> symbols, TrainingMeta meta = {});

  const Manifold& manifold() const noexcept { return manifold_; }
  std::span<const Point> symbols() const noexcept { return symbols_; }
  const Point& symbol(Symbol s) const { return symbols_.at(s); }
  std::size_t size() const noexcept { return symbols_.size(); }
  const Eigen::MatrixXd& lut() const noexcept { return lut_; }
  const std::string& id() const noexcept { return id_; }
  const TrainingMeta& meta() const noexcept { return meta_; }

  /// Printable token: base-62 (a-z, A-Z, 0-9) for K <= 62, else decimal.
  std::string token(Symbol s) const;
  /// Joins tokens; decimal tokens are separated by ','.
  std::string render(std::span<const Symbol> symbols) const;
  std::vector<Symbol> parse(std::string_view text) const;

 private:
  Manifold manifold_;
  std::vector<Point> symbols_;
  Eigen::MatrixXd lut_;
  std::string id_;
  TrainingMeta meta_;
};

/// Content hash of a manifold and a list of points (FNV-1a 64, hex).
std::string content_hash(const Manifold& manifold, std::span<const Point> points);

Eigen::MatrixXd build_lut(std::span<const Point> symbols);

/// Nearest symbol by geodesic distance; ties go to the lowest index.
Symbol assign(const Point& p, const Codebook& cb);
Symbol assign(const Point& p, std::span<const Point> symbols);

/// Shannon entropy in bits of the label histogram over K bins.
double entropy(std::span<const Symbol> labels, std::size_t k);

// --- geodesic K-means ------------------------------------------------------

struct KMeansOptions {
  int max_iters = 100;
  std::uint64_t seed = 0;
  /// Initial centers; k-means++ seeding from `seed` when absent.
  std::optional<std::vector<Point>> init;
};

struct KMeansResult {
  std::vector<Point> centers;
  std::vector<Symbol> labels;
  std::vector<std::size_t> sizes;
  /// Sum of squared geodesic distances after each assignment step.
  std::vector<double> objective;
  int iterations = 0;
};

KMeansResult kmeans_cluster(std::span<const Point> data, std::size_t k,
                            const KMeansOptions& options = {});

Codebook kmeans_geodesic(std::span<const Point> data, std::size_t k, int max_iters,
                         std::uint64_t seed);

// --- conscience-based competitive learning ----------------------------------

enum class WinRateRule {
  kBiasedWinner,    // p tracks the conscience-adjusted winner z
  kUnbiasedWinner,  // p tracks the plain nearest symbol y
};

struct ConscienceConfig {
  std::size_t k = 10;
  double alpha = 0.05;        // initial learning rate
  double alpha_final = 0.005; // reached linearly on the last pass
  double win_update = 1e-4;   // B
  double conscience = 10.0;   // C
  /// Multiply C by the mean squared pairwise distance of the data, so the
  /// bias is commensurate with squared geodesic distances on any manifold.
  bool scale_conscience_by_data = true;
  int max_passes = 50;
  bool shuffle = true;
  WinRateRule rule = WinRateRule::kBiasedWinner;
  std::uint64_t seed = 0;
};

struct ConscienceTrace {
  /// Entropy of nearest-symbol labels over the training data after each pass.
  std::vector<double> entropy_per_pass;
  /// Largest |sum(p) - 1| observed after any update.
  double max_win_rate_drift = 0.0;
  std::vector<double> win_rates;
  double effective_conscience = 0.0;
};

/// Conscience-driven equiprobable symbol learning on a manifold. Returns the
/// K learned prototypes.
std::vector<Point> conscience_symbols(std::span<const Point> data, const ConscienceConfig& cfg,
                                      std::optional<std::vector<Point>> init = std::nullopt,
                                      ConscienceTrace* trace = nullptr);

Codebook conscience_learn(std::span<const Point> data, const ConscienceConfig& cfg,
                          std::optional<std::vector<Point>> init = std::nullopt,
                          ConscienceTrace* trace = nullptr);

// --- hybrid two-stage scheme ----------------------------------------------

/// ceil((n_i / n_smallest) * r) per stage-one cluster, in exact integer
/// arithmetic on the cluster sizes.
std::vector<std::size_t> subcluster_counts(std::span<const std::size_t> cluster_sizes, int r);

struct HybridTrace {
  std::vector<std::size_t> stage1_sizes;
  std::vector<std::size_t> subcluster_counts;
};

/// Stage 1: geodesic K-means into stage1_k clusters. Stage 2: conscience
/// learning inside each cluster with subcluster_counts() prototypes.
Codebook hybrid_learn(std::span<const Point> data, std::size_t stage1_k, int r,
                      const ConscienceConfig& cfg, HybridTrace* trace = nullptr);

}  // namespace msax

#endif  // MSAX_CODEBOOK_HPP
