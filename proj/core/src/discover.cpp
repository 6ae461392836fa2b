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

#include "msax/discover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "msax/error.hpp"
#include "msax/match.hpp"

namespace msax {
namespace {

class WindowDistance {
 public:
  WindowDistance(std::span<const Symbol> t, std::size_t length, const Eigen::MatrixXd& lut,
                 bool use_dtw)
      : t_(t), length_(length), lut_(lut), use_dtw_(use_dtw) {}

  double operator()(std::size_t i, std::size_t j) const {
    const auto a = t_.subspan(i, length_);
    const auto b = t_.subspan(j, length_);
    if (use_dtw_) return dtw_symbolic(a, b, lut_, {std::nullopt, false}).distance;
    return symbol_distance(a, b, lut_);
  }

 private:
  std::span<const Symbol> t_;
  std::size_t length_;
  const Eigen::MatrixXd& lut_;
  bool use_dtw_;
};

void check_query(const MotifQuery& q) {
  if (q.length < 1) throw InvalidArgumentError("motif length must be >= 1");
  if (!(q.radius >= 0.0)) throw InvalidArgumentError("motif radius must be >= 0");
  if (q.trivial_radius < 1) throw InvalidArgumentError("trivial radius must be >= 1");
  if (q.top_k < 1) throw InvalidArgumentError("top k must be >= 1");
}

}  // namespace

SymbolSequence subsequence(const SymbolSequence& t, std::size_t pos, std::size_t n) {
  if (n < 1 || pos + n > t.symbols.size()) {
    throw InvalidArgumentError("subsequence [" + std::to_string(pos) + ", " +
                               std::to_string(pos + n) + ") outside a sequence of length " +
                               std::to_string(t.symbols.size()));
  }
  SymbolSequence out;
  out.codebook_id = t.codebook_id;
  out.window = t.window;
  out.symbols.assign(t.symbols.begin() + static_cast<std::ptrdiff_t>(pos),
                     t.symbols.begin() + static_cast<std::ptrdiff_t>(pos + n));
  const auto w = static_cast<std::size_t>(t.window);
  const std::size_t first_frame = pos * w;
  out.source_len = std::min(n * w, t.source_len > first_frame ? t.source_len - first_frame : 0);
  out.id = t.id + "@" + std::to_string(pos);
  out.label = t.label;
  return out;
}

bool is_trivial_match(std::size_t p, std::size_t q, std::size_t m) {
  const std::size_t gap = p > q ? p - q : q - p;
  return gap + 1 <= m;
}

std::vector<MotifResult> find_motifs(std::span<const Symbol> t, const MotifQuery& query,
                                     const Eigen::MatrixXd& lut) {
  check_query(query);
  if (t.size() < query.length) {
    throw InvalidArgumentError("find_motifs: sequence shorter than the motif length");
  }
  const std::size_t windows = t.size() - query.length + 1;
  const std::size_t m = query.trivial_radius;
  const WindowDistance dist(t, query.length, lut, query.use_dtw);

  // Pairwise window distances are cached when the table fits comfortably.
  constexpr std::size_t kMaxCachedWindows = 4096;
  std::vector<double> d;
  if (windows <= kMaxCachedWindows) {
    d.assign(windows * windows, 0.0);
    for (std::size_t i = 0; i < windows; ++i) {
      for (std::size_t j = i + 1; j < windows; ++j) {
        d[i * windows + j] = d[j * windows + i] = dist(i, j);
      }
    }
  }
  auto at = [&](std::size_t i, std::size_t j) {
    return d.empty() ? dist(i, j) : d[i * windows + j];
  };

  std::vector<bool> available(windows, true);
  std::vector<MotifResult> motifs;

  auto members_of = [&](std::size_t i) {
    std::vector<std::size_t> members;
    std::size_t last = i;
    for (std::size_t j = i + 1; j < windows; ++j) {
      if (available[j] && at(i, j) < query.radius && !is_trivial_match(j, last, m)) {
        members.push_back(j);
        last = j;
      }
    }
    last = i;
    for (std::size_t j = i; j-- > 0;) {
      if (available[j] && at(i, j) < query.radius && !is_trivial_match(j, last, m)) {
        members.push_back(j);
        last = j;
      }
    }
    if (!members.empty()) members.push_back(i);
    std::sort(members.begin(), members.end());
    return members;
  };

  while (motifs.size() < query.top_k) {
    std::size_t best = windows;
    std::vector<std::size_t> best_members;
    for (std::size_t i = 0; i < windows; ++i) {
      if (!available[i]) continue;
      auto members = members_of(i);
      if (best == windows || members.size() > best_members.size()) {
        best = i;
        best_members = std::move(members);
      }
    }
    if (best == windows) break;

    MotifResult motif;
    motif.center_pos = best;
    if (!best_members.empty()) {
      double best_sum = std::numeric_limits<double>::infinity();
      for (std::size_t c : best_members) {
        double sum = 0.0;
        double worst = 0.0;
        for (std::size_t j : best_members) {
          sum += at(c, j);
          worst = std::max(worst, at(c, j));
        }
        if (worst <= query.radius && sum < best_sum) {
          best_sum = sum;
          motif.center_pos = c;
        }
      }
      for (std::size_t j : best_members) motif.member_distances.push_back(at(motif.center_pos, j));
    }
    motif.count = best_members.size();
    motif.member_positions = std::move(best_members);

    auto suppress_around = [&](std::size_t p) {
      const std::size_t lo = p >= m - 1 ? p - (m - 1) : 0;
      const std::size_t hi = std::min(windows - 1, p + (m - 1));
      for (std::size_t q = lo; q <= hi; ++q) available[q] = false;
    };
    suppress_around(best);
    for (std::size_t p : motif.member_positions) suppress_around(p);
    motifs.push_back(std::move(motif));
  }
  return motifs;
}

std::vector<MotifResult> find_motifs(const SymbolSequence& t, const MotifQuery& query,
                                     const Codebook& cb) {
  if (t.codebook_id != cb.id()) {
    throw IncompatibleArtifactError("find_motifs: sequence was encoded with codebook " +
                                    t.codebook_id + ", not " + cb.id());
  }
  return find_motifs(t.symbols, query, cb.lut());
}

double auto_radius(std::span<const Symbol> t, std::size_t length, std::size_t trivial_radius,
                   const Eigen::MatrixXd& lut, double percentile, std::uint64_t seed) {
  if (length < 1 || t.size() < length) throw InvalidArgumentError("auto_radius: bad length");
  if (!(percentile >= 0.0 && percentile <= 1.0)) {
    throw InvalidArgumentError("auto_radius: percentile must lie in [0, 1]");
  }
  const std::size_t windows = t.size() - length + 1;
  const WindowDistance dist(t, length, lut, false);
  constexpr std::size_t kMaxPairs = 20000;

  std::vector<double> values;
  std::size_t nontrivial = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    for (std::size_t j = i + 1; j < windows; ++j) {
      if (!is_trivial_match(i, j, trivial_radius)) ++nontrivial;
    }
  }
  if (nontrivial == 0) throw InvalidArgumentError("auto_radius: no non-trivial window pairs");

  if (nontrivial <= kMaxPairs) {
    for (std::size_t i = 0; i < windows; ++i) {
      for (std::size_t j = i + 1; j < windows; ++j) {
        if (!is_trivial_match(i, j, trivial_radius)) values.push_back(dist(i, j));
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, windows - 1);
    while (values.size() < kMaxPairs) {
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (!is_trivial_match(i, j, trivial_radius)) values.push_back(dist(i, j));
    }
  }
  const auto rank = static_cast<std::size_t>(
      std::floor(percentile * static_cast<double>(values.size() - 1)));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank), values.end());
  return std::nextafter(values[rank], std::numeric_limits<double>::infinity());
}

}  // namespace msax
