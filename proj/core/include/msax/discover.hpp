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

#ifndef MSAX_DISCOVER_HPP
#define MSAX_DISCOVER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "msax/codebook.hpp"
#include "msax/encode.hpp"

namespace msax {

// Positions in this module are 0-based symbol offsets.

struct MotifQuery {
  std::size_t length = 1;          // l, in symbols
  double radius = 0.0;             // R; a pair matches when its distance is < R
  std::size_t trivial_radius = 1;  // m; |p - q| <= m - 1 is a trivial match
  std::size_t top_k = 1;
  bool use_dtw = false;            // compare windows with DTW instead of rigidly
};

struct MotifResult {
  std::size_t center_pos = 0;
  std::vector<std::size_t> member_positions;  // ascending; includes the center
  std::vector<double> member_distances;       // distance of each member to the center
  std::size_t count = 0;                      // number of members

  friend bool operator==(const MotifResult&, const MotifResult&) = default;
};

/// T[pos, pos + n).
SymbolSequence subsequence(const SymbolSequence& t, std::size_t pos, std::size_t n);

/// True iff |p - q| <= m - 1, including p == q.
bool is_trivial_match(std::size_t p, std::size_t q, std::size_t m);

/// Brute-force top-k motif search.
///
/// For every window i, the occurrences of i are the windows j with
/// d(T_i, T_j) < R that do not trivially match i. Among them the largest
/// set of mutually non-trivial positions containing i is kept (a window with
/// no occurrence forms an empty motif of count 0). The candidate with the most
/// members is emitted (ties: lowest position), every position within m - 1 of
/// one of its members is suppressed, and the search repeats until k motifs are
/// emitted or no candidate is left. Each motif's center is the member with the
/// smallest summed distance to the others among members within R of all of
/// them.
std::vector<MotifResult> find_motifs(std::span<const Symbol> t, const MotifQuery& query,
                                     const Eigen::MatrixXd& lut);
std::vector<MotifResult> find_motifs(const SymbolSequence& t, const MotifQuery& query,
                                     const Codebook& cb);

/// Radius such that the closest 5% (by default) of non-trivial window pairs
/// match: the next double above that percentile of the pair distances. All
/// pairs are used up to 20000, otherwise a seeded sample of that size.
double auto_radius(std::span<const Symbol> t, std::size_t length, std::size_t trivial_radius,
                   const Eigen::MatrixXd& lut, double percentile = 0.05,
                   std::uint64_t seed = 0);

}  // namespace msax

#endif  // MSAX_DISCOVER_HPP
