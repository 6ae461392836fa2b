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

#ifndef MSAX_STATS_HPP
#define MSAX_STATS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msax/geometry.hpp"

namespace msax {

/// An ordered, equally spaced series of points on one manifold.
struct ManifoldSequence {
  Manifold manifold = Manifold::euclidean(1);
  std::vector<Point> points;
  std::string id;
  std::optional<std::string> label;
};

/// Throws ValidationError naming the sequence and the offending frame.
void validate_sequence(const ManifoldSequence& seq);

struct KarcherConfig {
  int max_iters = 100;
  double tol = 1e-8;  // on |sum_i log_mu(x_i)|, the gradient norm
  double step = 1.0;
};

struct MeanResult {
  Point mean;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

/// Intrinsic (Frechet/Karcher) mean by the fixed-point iteration
///   mu <- exp_mu(step * (1/N) sum_i log_mu(x_i)).
///
/// Points are first put into a canonical (lexicographic) order, so the result
/// does not depend on the order of the input. Iteration starts at the first
/// canonical point. Grassmann inputs are dispatched to extrinsic_mean().
/// Non-convergence within max_iters is reported through the result, not thrown.
MeanResult karcher_mean(std::span<const Point> points, const KarcherConfig& cfg = {});

/// Pi((1/N) sum P_i). Throws DegenerateError if the average has no rank-d
/// eigen-gap.
Point extrinsic_mean(std::span<const Point> points);

/// Piece-wise aggregation: ceil(N/W) consecutive non-overlapping windows,
/// each replaced by its mean. The last window may be short.
ManifoldSequence paa(const ManifoldSequence& seq, int window, const KarcherConfig& cfg = {});

/// Number of windows paa() produces.
std::size_t window_count(std::size_t length, int window);

}  // namespace msax

#endif  // MSAX_STATS_HPP
