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

#include "msax/stats.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "msax/error.hpp"

namespace msax {
namespace {

bool lexicographic_less(const Point* a, const Point* b) {
  return std::lexicographical_compare(a->data.begin(), a->data.end(), b->data.begin(),
                                      b->data.end());
}

void require_common_manifold(std::span<const Point> points) {
  for (const auto& p : points) {
    if (!(p.manifold == points.front().manifold)) {
      throw IncompatibleManifoldsError("mean over points from different manifolds");
    }
  }
}

}  // namespace

void validate_sequence(const ManifoldSequence& seq) {
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const Point& p = seq.points[i];
    if (!(p.manifold == seq.manifold)) {
      throw ValidationError("sequence '" + seq.id + "' frame " + std::to_string(i) +
                            ": manifold " + p.manifold.to_string() + " differs from " +
                            seq.manifold.to_string());
    }
    if (auto v = validate_point(p)) {
      throw ValidationError("sequence '" + seq.id + "' frame " + std::to_string(i) + ": " +
                            v->invariant + " violated by " + std::to_string(v->magnitude));
    }
  }
}

MeanResult karcher_mean(std::span<const Point> points, const KarcherConfig& cfg) {
  if (points.empty()) throw InvalidArgumentError("karcher_mean of an empty set");
  if (cfg.max_iters < 1 || !(cfg.tol > 0.0) || !(cfg.step > 0.0 && cfg.step <= 1.0)) {
    throw InvalidArgumentError("karcher_mean: bad configuration");
  }
  require_common_manifold(points);
  const Manifold& manifold = points.front().manifold;

  if (manifold.kind() == ManifoldKind::kGrassmann) {
    return {extrinsic_mean(points), 0, true, 0.0};
  }

  std::vector<const Point*> order(points.size());
  std::transform(points.begin(), points.end(), order.begin(), [](const Point& p) { return &p; });
  std::sort(order.begin(), order.end(), lexicographic_less);

  const double inv_n = 1.0 / static_cast<double>(points.size());
  MeanResult result{*order.front(), 0, false, 0.0};
  Tangent gradient = zero_tangent(manifold);
  while (true) {
    gradient.data.setZero();
    for (const Point* p : order) gradient.data += log_map(result.mean, *p).data;
    result.gradient_norm = tangent_norm(gradient);
    if (result.gradient_norm <= cfg.tol) {
      result.converged = true;
      return result;
    }
    if (result.iterations == cfg.max_iters) return result;
    gradient.data *= cfg.step * inv_n;
    result.mean = exp_map(result.mean, gradient);
    ++result.iterations;
  }
}

Point extrinsic_mean(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgumentError("extrinsic_mean of an empty set");
  require_common_manifold(points);
  const Manifold& manifold = points.front().manifold;
  if (manifold.kind() != ManifoldKind::kGrassmann) {
    throw IncompatibleManifoldsError("extrinsic_mean is defined for Grassmann points");
  }
  const int m = manifold.primary_dim();
  const int d = manifold.rank();

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(manifold.ambient_size());
  for (const auto& p : points) sum += p.data;
  sum /= static_cast<double>(points.size());
  const Eigen::Map<const Eigen::MatrixXd> average(sum.data(), m, m);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (average + average.transpose()));
  const auto& ev = eig.eigenvalues();  // ascending
  const double gap = ev(m - d) - ev(m - d - 1);
  if (!(gap > 1e-10)) {
    throw DegenerateError("extrinsic_mean: averaged projector has no rank-d eigen-gap");
  }
  return grassmann_project(average, d);
}

std::size_t window_count(std::size_t length, int window) {
  if (window < 1) throw InvalidArgumentError("window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  return (length + w - 1) / w;
}

ManifoldSequence paa(const ManifoldSequence& seq, int window, const KarcherConfig& cfg) {
  const std::size_t count = window_count(seq.points.size(), window);
  if (window == 1) return seq;

  ManifoldSequence out{seq.manifold, {}, seq.id, seq.label};
  out.points.reserve(count);
  const auto w = static_cast<std::size_t>(window);
  const std::span<const Point> all(seq.points);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t begin = k * w;
    const std::size_t len = std::min(w, all.size() - begin);
    out.points.push_back(karcher_mean(all.subspan(begin, len), cfg).mean);
  }
  return out;
}

}  // namespace msax
