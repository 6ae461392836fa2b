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

#ifndef MSAX_MATCH_HPP
#define MSAX_MATCH_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "msax/codebook.hpp"
#include "msax/encode.hpp"
#include "msax/error.hpp"
#include "msax/stats.hpp"

namespace msax {

/// Rigid (equal-length) distance: sum_i lut[p_i][q_i]. Reads only the table.
double symbol_distance(std::span<const Symbol> p, std::span<const Symbol> q,
                       const Eigen::MatrixXd& lut);
double symbol_distance(const SymbolSequence& p, const SymbolSequence& q, const Codebook& cb);

struct DtwOptions {
  /// Sakoe-Chiba half-width; widened to |n - m| so a path always exists.
  std::optional<std::size_t> band;
  bool with_path = true;
};

struct DtwResult {
  double distance = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

/// Classic boundary-anchored DTW with steps (1,0), (0,1), (1,1).
/// `cost(i, j)` returns the local cost of aligning element i with element j.
template <typename Cost>
DtwResult dtw(std::size_t n, std::size_t m, Cost&& cost, const DtwOptions& options = {}) {
  if (n == 0 || m == 0) throw InvalidArgumentError("dtw: empty sequence");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t gap = n > m ? n - m : m - n;
  const std::size_t band = options.band ? std::max(*options.band, gap) : std::max(n, m);
  auto inside = [&](std::size_t i, std::size_t j) { return (i > j ? i - j : j - i) <= band; };

  if (!options.with_path) {
    std::vector<double> prev(m, kInf);
    std::vector<double> cur(m, kInf);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(cur.begin(), cur.end(), kInf);
      for (std::size_t j = 0; j < m; ++j) {
        if (!inside(i, j)) continue;
        double best;
        if (i == 0 && j == 0) {
          best = 0.0;
        } else {
          best = kInf;
          if (i > 0) best = std::min(best, prev[j]);
          if (j > 0) best = std::min(best, cur[j - 1]);
          if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
        }
        cur[j] = best + cost(i, j);
      }
      std::swap(prev, cur);
    }
    return {prev[m - 1], {}};
  }

  std::vector<double> acc(n * m, kInf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!inside(i, j)) continue;
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = kInf;
        if (i > 0) best = std::min(best, at(i - 1, j));
        if (j > 0) best = std::min(best, at(i, j - 1));
        if (i > 0 && j > 0) best = std::min(best, at(i - 1, j - 1));
      }
      at(i, j) = best + cost(i, j);
    }
  }

  DtwResult result{at(n - 1, m - 1), {}};
  std::size_t i = n - 1;
  std::size_t j = m - 1;
  result.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = at(i - 1, j - 1);
      const double up = at(i - 1, j);
      const double left = at(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    result.path.emplace_back(i, j);
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

/// DTW whose local cost is a table lookup between symbols.
DtwResult dtw_symbolic(std::span<const Symbol> p, std::span<const Symbol> q,
                       const Eigen::MatrixXd& lut, const DtwOptions& options = {});
DtwResult dtw_symbolic(const SymbolSequence& p, const SymbolSequence& q, const Codebook& cb,
                       const DtwOptions& options = {});

/// Baseline DTW on raw manifold points with geodesic local cost.
DtwResult dtw_geodesic(const ManifoldSequence& a, const ManifoldSequence& b,
                       const DtwOptions& options = {});

/// Encoded sequences sharing one codebook, optionally with their raw sources.
class SequenceDatabase {
 public:
  explicit SequenceDatabase(std::string codebook_id) : codebook_id_(std::move(codebook_id)) {}

  void add(SymbolSequence entry);
  void add(SymbolSequence entry, ManifoldSequence raw);

  const std::string& codebook_id() const noexcept { return codebook_id_; }
  std::span<const SymbolSequence> entries() const noexcept { return entries_; }
  /// Raw sequences, parallel to entries(); empty unless every entry has one.
  std::span<const ManifoldSequence> raw() const noexcept;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::string codebook_id_;
  std::vector<SymbolSequence> entries_;
  std::vector<ManifoldSequence> raw_;
};

struct Neighbor {
  std::string id;
  double distance = 0.0;
  std::optional<std::string> label;
};

/// k nearest entries under DTW with the codebook table, ascending by
/// (distance, id).
std::vector<Neighbor> knn(const SymbolSequence& query, const SequenceDatabase& db,
                          const Codebook& cb, std::size_t k, const DtwOptions& options = {});

/// The same search with geodesic DTW over raw sequences.
std::vector<Neighbor> knn_geodesic(const ManifoldSequence& query,
                                   std::span<const ManifoldSequence> db, std::size_t k,
                                   const DtwOptions& options = {});

/// Label of the symbolic-DTW nearest neighbour.
std::string nn_classify(const SymbolSequence& query, const SequenceDatabase& db,
                        const Codebook& cb);

struct LooResult {
  double accuracy = 0.0;
  std::vector<std::string> predicted;
};

/// Leave-one-out 1-NN over a labeled database.
LooResult leave_one_out_symbolic(const SequenceDatabase& db, const Codebook& cb);
LooResult leave_one_out_geodesic(std::span<const ManifoldSequence> sequences);

/// Exact substring lookup over the symbol strings of a database.
class SubstringIndex {
 public:
  struct Occurrence {
    std::size_t entry;
    std::size_t offset;
    friend bool operator==(const Occurrence&, const Occurrence&) = default;
  };

  explicit SubstringIndex(std::span<const SymbolSequence> entries);

  /// All (entry, offset) positions where `pattern` occurs, in order.
  std::vector<Occurrence> find(std::span<const Symbol> pattern) const;

 private:
  std::vector<std::vector<Symbol>> strings_;
};

}  // namespace msax

#endif  // MSAX_MATCH_HPP
