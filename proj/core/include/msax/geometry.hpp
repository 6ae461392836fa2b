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

#ifndef MSAX_GEOMETRY_HPP
#define MSAX_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace msax {

enum class ManifoldKind { kEuclidean, kHypersphere, kGrassmann, kProductSE3 };

/// Shape descriptor for one of the supported manifolds.
///
///   Euclidean(n)       points are R^n vectors
///   Hypersphere(B)     unit vectors in R^B, i.e. S^{B-1}
///   Grassmann(m, d)    m x m rank-d orthogonal projectors, row-major
///   ProductSE3(J)      J homogeneous 4 x 4 rigid transforms, row-major
class Manifold {
 public:
  static Manifold euclidean(int n);
  static Manifold hypersphere(int ambient_dim);
  static Manifold grassmann(int m, int d);
  static Manifold product_se3(int factors);

  /// Parses "euclidean:3", "sphere:8", "grassmann:10:2" or "se3:19".
  static Manifold parse(std::string_view text);

  ManifoldKind kind() const noexcept { return kind_; }

  /// Euclidean n, hypersphere B, Grassmann m, ProductSE3 J.
  int primary_dim() const noexcept { return a_; }
  /// Grassmann subspace rank d; zero for the other kinds.
  int rank() const noexcept { return b_; }

  /// Number of doubles in a point (and tangent) representation.
  int ambient_size() const noexcept;
  /// Number of intrinsic degrees of freedom.
  int intrinsic_dim() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Manifold&, const Manifold&) = default;

 private:
  Manifold(ManifoldKind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}

  ManifoldKind kind_ = ManifoldKind::kEuclidean;
  int a_ = 1;
  int b_ = 0;
};

struct Point {
  Manifold manifold;
  Eigen::VectorXd data;
};

/// Tangent vector in the ambient layout of its base point. For ProductSE3 the
/// data holds J left-trivialized se(3) matrices (base^-1 * dP), row-major; for
/// Grassmann it is a symmetric displacement in the m x m embedding.
struct Tangent {
  Manifold manifold;
  Eigen::VectorXd data;
};

struct Violation {
  std::string invariant;
  double magnitude = 0.0;
};

/// Geodesic distance. Grassmann uses the projection (chordal Frobenius)
/// metric, ProductSE3 the root-sum-square of per-factor |vec(log(P^-1 Q))|.
double distance(const Point& a, const Point& b);

Point exp_map(const Point& base, const Tangent& v);
Tangent log_map(const Point& base, const Point& target);

/// Riemannian norm of v. ProductSE3 uses |vec(B)| = |(u, w)| per factor.
double tangent_norm(const Tangent& v);

Tangent zero_tangent(const Manifold& manifold);

/// Closest rank-d projector to M under the Frobenius norm.
/// Throws DegenerateError when the d-th singular value of M is <= 1e-10.
Point grassmann_project(const Eigen::MatrixXd& m, int d);

/// Returns the first violated invariant, or nullopt for a valid point.
std::optional<Violation> validate_point(const Point& p);
std::optional<Violation> validate_tangent(const Point& base, const Tangent& v);

/// Throws ValidationError if p violates an invariant.
void require_valid(const Point& p);

Point random_point(const Manifold& manifold, std::uint64_t seed);
Point random_point(const Manifold& manifold, std::mt19937_64& rng);

/// Gaussian tangent vector at base with root-mean-square norm `scale`.
Tangent random_tangent(const Point& base, double scale, std::mt19937_64& rng);

/// Counts distance/exp/log evaluations process-wide. Used to assert that
/// symbolic matching never touches manifold geometry.
std::uint64_t geometry_call_count() noexcept;
void reset_geometry_call_count() noexcept;

}  // namespace msax

#endif  // MSAX_GEOMETRY_HPP
