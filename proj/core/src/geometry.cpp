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

#include "msax/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "msax/error.hpp"
#include "msax/se3.hpp"

namespace msax {
namespace {

std::atomic<std::uint64_t> g_geometry_calls{0};

void count_call() { g_geometry_calls.fetch_add(1, std::memory_order_relaxed); }

constexpr double kStructuralTol = 1e-6;
constexpr double kUnitNormTol = 1e-9;
constexpr double kTangencyTol = 1e-9;
constexpr double kAntipodalMargin = 1e-9;
constexpr double kSingularFloor = 1e-10;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> as_matrix(const Eigen::VectorXd& data, int m) {
  return {data.data(), m, m};
}

Eigen::Map<const se3::Matrix4> factor(const Eigen::VectorXd& data, int j) {
  return Eigen::Map<const se3::Matrix4>(data.data() + 16 * j);
}

Eigen::Map<se3::Matrix4> factor(Eigen::VectorXd& data, int j) {
  return Eigen::Map<se3::Matrix4>(data.data() + 16 * j);
}

void require_same(const Manifold& a, const Manifold& b) {
  if (!(a == b)) {
    throw IncompatibleManifoldsError("manifold mismatch: " + a.to_string() +
                                     " vs " + b.to_string());
  }
}

void require_size(const Manifold& m, const Eigen::VectorXd& data) {
  if (data.size() != m.ambient_size()) {
    throw ValidationError("data length " + std::to_string(data.size()) +
                          " does not match " + m.to_string());
  }
}

int parse_int(std::string_view token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgumentError("bad integer in manifold descriptor: '" +
                               std::string(token) + "'");
  }
  return value;
}

double sphere_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  // 2 atan2(|a-b|, |a+b|) equals acos<a,b> for unit vectors and is accurate
  // near 0 and pi.
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

double se3_distance_squared(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                            int factors) {
  double sum = 0.0;
  for (int j = 0; j < factors; ++j) {
    const se3::Matrix4 rel = se3::inverse(factor(a, j)) * factor(b, j);
    sum += se3::log_se3(rel).squaredNorm();
  }
  return sum;
}

}  // namespace

Manifold Manifold::euclidean(int n) {
  if (n < 1) throw InvalidArgumentError("euclidean dimension must be >= 1");
  return {ManifoldKind::kEuclidean, n, 0};
}

Manifold Manifold::hypersphere(int ambient_dim) {
  if (ambient_dim < 1) throw InvalidArgumentError("hypersphere dimension must be >= 1");
  return {ManifoldKind::kHypersphere, ambient_dim, 0};
}

Manifold Manifold::grassmann(int m, int d) {
  if (m < 1 || d < 1 || d >= m) {
    throw InvalidArgumentError("grassmann requires 0 < d < m");
  }
  return {ManifoldKind::kGrassmann, m, d};
}

Manifold Manifold::product_se3(int factors) {
  if (factors < 1) throw InvalidArgumentError("product_se3 needs at least one factor");
  return {ManifoldKind::kProductSE3, factors, 0};
}

Manifold Manifold::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const auto name = parts.front();
  if ((name == "euclidean" || name == "R") && parts.size() == 2) {
    return euclidean(parse_int(parts[1]));
  }
  if ((name == "sphere" || name == "hypersphere") && parts.size() == 2) {
    return hypersphere(parse_int(parts[1]));
  }
  if (name == "grassmann" && parts.size() == 3) {
    return grassmann(parse_int(parts[1]), parse_int(parts[2]));
  }
  if (name == "se3" && parts.size() == 2) {
    return product_se3(parse_int(parts[1]));
  }
  throw InvalidArgumentError("unrecognized manifold descriptor '" + std::string(text) + "'");
}

int Manifold::ambient_size() const noexcept {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kHypersphere:
      return a_;
    case ManifoldKind::kGrassmann:
      return a_ * a_;
    case ManifoldKind::kProductSE3:
      return 16 * a_;
  }
  return 0;
}

int Manifold::intrinsic_dim() const noexcept {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return a_;
    case ManifoldKind::kHypersphere:
      return a_ - 1;
    case ManifoldKind::kGrassmann:
      return b_ * (a_ - b_);
    case ManifoldKind::kProductSE3:
      return 6 * a_;
  }
  return 0;
}

std::string Manifold::to_string() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return "euclidean:" + std::to_string(a_);
    case ManifoldKind::kHypersphere:
      return "sphere:" + std::to_string(a_);
    case ManifoldKind::kGrassmann:
      return "grassmann:" + std::to_string(a_) + ":" + std::to_string(b_);
    case ManifoldKind::kProductSE3:
      return "se3:" + std::to_string(a_);
  }
  return "unknown";
}

double distance(const Point& a, const Point& b) {
  require_same(a.manifold, b.manifold);
  require_size(a.manifold, a.data);
  require_size(b.manifold, b.data);
  count_call();
  switch (a.manifold.kind()) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kGrassmann:
      return (a.data - b.data).norm();
    case ManifoldKind::kHypersphere:
      return sphere_angle(a.data, b.data);
    case ManifoldKind::kProductSE3:
      return std::sqrt(se3_distance_squared(a.data, b.data, a.manifold.primary_dim()));
  }
  return 0.0;
}

Point exp_map(const Point& base, const Tangent& v) {
  require_same(base.manifold, v.manifold);
  require_size(base.manifold, base.data);
  require_size(v.manifold, v.data);
  count_call();
  const Manifold& m = base.manifold;
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return {m, base.data + v.data};
    case ManifoldKind::kHypersphere: {
      const double n = v.data.norm();
      if (n > std::numbers::pi + 1e-12) {
        throw InjectivityError("sphere exp: tangent norm exceeds pi");
      }
      if (n == 0.0) return base;
      Eigen::VectorXd x = std::cos(n) * base.data + (std::sin(n) / n) * v.data;
      x.normalize();
      return {m, std::move(x)};
    }
    case ManifoldKind::kGrassmann: {
      if (v.data.isZero(0.0)) return base;
      const int dim = m.primary_dim();
      const Eigen::MatrixXd moved = as_matrix(base.data, dim) + as_matrix(v.data, dim);
      return grassmann_project(moved, m.rank());
    }
    case ManifoldKind::kProductSE3: {
      Point out{m, base.data};
      for (int j = 0; j < m.primary_dim(); ++j) {
        const se3::Matrix4 b = factor(v.data, j);
        factor(out.data, j) = factor(base.data, j) * se3::exp_se3(se3::vee6(b));
      }
      return out;
    }
  }
  return base;
}

Tangent log_map(const Point& base, const Point& target) {
  require_same(base.manifold, target.manifold);
  require_size(base.manifold, base.data);
  require_size(target.manifold, target.data);
  count_call();
  const Manifold& m = base.manifold;
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kGrassmann:
      return {m, target.data - base.data};
    case ManifoldKind::kHypersphere: {
      const double c = std::clamp(base.data.dot(target.data), -1.0, 1.0);
      if (c <= -1.0 + kAntipodalMargin) {
        throw InjectivityError("sphere log: target is antipodal to base");
      }
      Eigen::VectorXd u = target.data - c * base.data;
      const double un = u.norm();
      const double theta = sphere_angle(base.data, target.data);
      if (un == 0.0 || theta == 0.0) return zero_tangent(m);
      u *= theta / un;
      return {m, std::move(u)};
    }
    case ManifoldKind::kProductSE3: {
      Tangent out{m, Eigen::VectorXd::Zero(m.ambient_size())};
      for (int j = 0; j < m.primary_dim(); ++j) {
        const se3::Matrix4 rel = se3::inverse(factor(base.data, j)) * factor(target.data, j);
        factor(out.data, j) = se3::hat6(se3::log_se3(rel));
      }
      return out;
    }
  }
  return zero_tangent(m);
}

double tangent_norm(const Tangent& v) {
  if (v.manifold.kind() != ManifoldKind::kProductSE3) return v.data.norm();
  double sum = 0.0;
  for (int j = 0; j < v.manifold.primary_dim(); ++j) {
    sum += se3::vee6(factor(v.data, j)).squaredNorm();
  }
  return std::sqrt(sum);
}

Tangent zero_tangent(const Manifold& manifold) {
  return {manifold, Eigen::VectorXd::Zero(manifold.ambient_size())};
}

Point grassmann_project(const Eigen::MatrixXd& m, int d) {
  if (m.rows() != m.cols()) throw InvalidArgumentError("grassmann_project: matrix must be square");
  const int n = static_cast<int>(m.rows());
  const Manifold manifold = Manifold::grassmann(n, d);

  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) throw DegenerateError("grassmann_project: eigensolver failed");

  // The Frobenius-closest projector depends only on the symmetric part; the
  // rank test uses the singular values of m itself.
  Eigen::VectorXd sv;
  const double asym = (m - m.transpose()).norm();
  if (asym <= 1e-12 * (1.0 + m.norm())) {
    sv = eig.eigenvalues().cwiseAbs();
    std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
  } else {
    sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
  if (sv(d - 1) <= kSingularFloor) {
    throw DegenerateError("grassmann_project: fewer than d nonzero singular values");
  }

  // Eigenvalues are ascending; the top-d subspace is the last d columns.
  const Eigen::MatrixXd u = eig.eigenvectors().rightCols(d);
  Eigen::MatrixXd p = u * u.transpose();
  p = 0.5 * (p + p.transpose()).eval();
  return {manifold, Eigen::Map<const Eigen::VectorXd>(p.data(), p.size())};
}

std::optional<Violation> validate_point(const Point& p) {
  const Manifold& m = p.manifold;
  if (p.data.size() != m.ambient_size()) {
    return Violation{"size", std::abs(static_cast<double>(p.data.size() - m.ambient_size()))};
  }
  if (!p.data.allFinite()) return Violation{"finite", std::numeric_limits<double>::infinity()};

  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      break;
    case ManifoldKind::kHypersphere: {
      const double dev = std::abs(p.data.norm() - 1.0);
      if (dev >= kUnitNormTol) return Violation{"unit_norm", dev};
      break;
    }
    case ManifoldKind::kGrassmann: {
      const auto pm = as_matrix(p.data, m.primary_dim());
      const double asym = (pm - pm.transpose()).norm();
      if (asym >= kStructuralTol) return Violation{"symmetry", asym};
      const double idem = (pm * pm - pm).norm();
      if (idem >= kStructuralTol) return Violation{"idempotence", idem};
      const double tr = std::abs(pm.trace() - m.rank());
      if (tr >= kStructuralTol) return Violation{"trace", tr};
      break;
    }
    case ManifoldKind::kProductSE3: {
      for (int j = 0; j < m.primary_dim(); ++j) {
        const auto t = factor(p.data, j);
        Eigen::RowVector4d bottom = t.row(3);
        const double row_dev = (bottom - Eigen::RowVector4d(0, 0, 0, 1)).norm();
        if (row_dev >= kStructuralTol) return Violation{"homogeneous_row", row_dev};
        const Eigen::Matrix3d r = t.topLeftCorner<3, 3>();
        const double orth = (r.transpose() * r - Eigen::Matrix3d::Identity()).norm();
        if (orth >= kStructuralTol) return Violation{"orthogonality", orth};
        const double det = r.determinant();
        if (det <= 0.0) return Violation{"orientation", det};
      }
      break;
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_tangent(const Point& base, const Tangent& v) {
  if (!(base.manifold == v.manifold)) return Violation{"manifold", 1.0};
  const Manifold& m = v.manifold;
  if (v.data.size() != m.ambient_size()) {
    return Violation{"size", std::abs(static_cast<double>(v.data.size() - m.ambient_size()))};
  }
  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      break;
    case ManifoldKind::kHypersphere: {
      const double dot = std::abs(base.data.dot(v.data));
      if (dot >= kTangencyTol) return Violation{"tangency", dot};
      break;
    }
    case ManifoldKind::kGrassmann: {
      const auto x = as_matrix(v.data, m.primary_dim());
      const double asym = (x - x.transpose()).norm();
      if (asym >= kStructuralTol) return Violation{"symmetry", asym};
      break;
    }
    case ManifoldKind::kProductSE3: {
      for (int j = 0; j < m.primary_dim(); ++j) {
        const auto b = factor(v.data, j);
        const Eigen::Matrix3d u = b.topLeftCorner<3, 3>();
        const double skew = (u + u.transpose()).norm();
        if (skew >= kTangencyTol) return Violation{"skew_symmetry", skew};
        const double row = b.row(3).norm();
        if (row >= kTangencyTol) return Violation{"zero_row", row};
      }
      break;
    }
  }
  return std::nullopt;
}

void require_valid(const Point& p) {
  if (auto v = validate_point(p)) {
    throw ValidationError("invalid " + p.manifold.to_string() + " point: " + v->invariant +
                          " violated by " + std::to_string(v->magnitude));
  }
}

Point random_point(const Manifold& manifold, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_point(manifold, rng);
}

Point random_point(const Manifold& manifold, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto gaussian = [&](Eigen::Index n) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = gauss(rng);
    return g;
  };

  switch (manifold.kind()) {
    case ManifoldKind::kEuclidean:
      return {manifold, gaussian(manifold.primary_dim())};
    case ManifoldKind::kHypersphere: {
      Eigen::VectorXd g;
      do {
        g = gaussian(manifold.primary_dim());
      } while (g.norm() < 1e-8);
      g.normalize();
      return {manifold, std::move(g)};
    }
    case ManifoldKind::kGrassmann: {
      const int m = manifold.primary_dim();
      const int d = manifold.rank();
      const Eigen::VectorXd g = gaussian(static_cast<Eigen::Index>(m) * d);
      const Eigen::Map<const Eigen::MatrixXd> basis(g.data(), m, d);
      return grassmann_project(basis * basis.transpose(), d);
    }
    case ManifoldKind::kProductSE3: {
      std::uniform_real_distribution<double> angle(0.0, 0.5 * std::numbers::pi);
      Point out{manifold, Eigen::VectorXd::Zero(manifold.ambient_size())};
      for (int j = 0; j < manifold.primary_dim(); ++j) {
        Eigen::Vector3d axis;
        do {
          axis = gaussian(3);
        } while (axis.norm() < 1e-8);
        axis.normalize();
        se3::Matrix4 t = se3::Matrix4::Identity();
        t.topLeftCorner<3, 3>() = se3::exp_so3(angle(rng) * axis);
        t.topRightCorner<3, 1>() = gaussian(3);
        factor(out.data, j) = t;
      }
      return out;
    }
  }
  return {manifold, Eigen::VectorXd()};
}

Tangent random_tangent(const Point& base, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Manifold& m = base.manifold;
  auto gaussian = [&](Eigen::Index n) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = gauss(rng);
    return g;
  };

  switch (m.kind()) {
    case ManifoldKind::kEuclidean:
      return {m, gaussian(m.primary_dim()) * (scale / std::sqrt(m.primary_dim()))};
    case ManifoldKind::kHypersphere: {
      Eigen::VectorXd g = gaussian(m.primary_dim());
      g -= g.dot(base.data) * base.data;
      const int dof = std::max(1, m.intrinsic_dim());
      return {m, g * (scale / std::sqrt(dof))};
    }
    case ManifoldKind::kGrassmann: {
      const int n = m.primary_dim();
      const Eigen::VectorXd g = gaussian(static_cast<Eigen::Index>(n) * n);
      const Eigen::Map<const Eigen::MatrixXd> gm(g.data(), n, n);
      const Eigen::MatrixXd p = as_matrix(base.data, n);
      const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n) - p;
      const Eigen::MatrixXd half = p * gm * q;
      Eigen::MatrixXd x = half + half.transpose();
      x *= scale / std::sqrt(2.0 * m.intrinsic_dim());
      return {m, Eigen::Map<const Eigen::VectorXd>(x.data(), x.size())};
    }
    case ManifoldKind::kProductSE3: {
      Tangent out = zero_tangent(m);
      const double s = scale / std::sqrt(6.0 * m.primary_dim());
      for (int j = 0; j < m.primary_dim(); ++j) {
        se3::Vector6 xi = gaussian(6) * s;
        factor(out.data, j) = se3::hat6(xi);
      }
      return out;
    }
  }
  return zero_tangent(m);
}

std::uint64_t geometry_call_count() noexcept {
  return g_geometry_calls.load(std::memory_order_relaxed);
}

void reset_geometry_call_count() noexcept {
  g_geometry_calls.store(0, std::memory_order_relaxed);
}

}  // namespace msax
