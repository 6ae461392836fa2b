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

// Independent reference computations used by the tests. Nothing here calls
// into the library's geometry; each routine works from first principles.

#ifndef MSAX_TESTS_ORACLES_HPP
#define MSAX_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Chord form; acos loses half the digits near coincident points.
inline double sphere_distance(const VectorXd& a, const VectorXd& b) {
  if (a.dot(b) >= 0.0) return 2.0 * std::asin(std::min(1.0, (a - b).norm() / 2.0));
  return M_PI - 2.0 * std::asin(std::min(1.0, (a + b).norm() / 2.0));
}

inline VectorXd sphere_exp(const VectorXd& base, const VectorXd& v) {
  const double n = v.norm();
  if (n == 0.0) return base;
  return std::cos(n) * base + std::sin(n) * v / n;
}

// Row-major 4x4 block j of a flattened SE(3)^J point.
inline Matrix4d block(const VectorXd& data, int j) {
  Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = data(16 * j + 4 * r + c);
  return m;
}

inline void set_block(VectorXd& data, int j, const Matrix4d& m) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) data(16 * j + 4 * r + c) = m(r, c);
}

// Generic matrix exponential / logarithm (Pade / Schur-Parlett).
inline Matrix4d matrix_exp(const Matrix4d& x) { return x.exp(); }
inline Matrix4d matrix_log(const Matrix4d& x) { return x.log(); }

// |vec(B)| with B = log(P^-1 Q): rotation generator w from the skew block,
// translation generator u from the last column.
inline double se3_factor_distance(const Matrix4d& p, const Matrix4d& q) {
  const Matrix4d b = matrix_log(p.inverse() * q);
  const Eigen::Vector3d w(b(2, 1), b(0, 2), b(1, 0));
  const Eigen::Vector3d u = b.block<3, 1>(0, 3);
  return std::sqrt(w.squaredNorm() + u.squaredNorm());
}

// DTW by exhaustive enumeration of monotone paths with steps (1,0),(0,1),(1,1).
inline double dtw_enumerate(const MatrixXd& cost) {
  const auto n = cost.rows();
  const auto m = cost.cols();
  double best = std::numeric_limits<double>::infinity();
  std::function<void(Eigen::Index, Eigen::Index, double)> walk = [&](Eigen::Index i,
                                                                     Eigen::Index j, double acc) {
    acc += cost(i, j);
    if (i == n - 1 && j == m - 1) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < n) walk(i + 1, j, acc);
    if (j + 1 < m) walk(i, j + 1, acc);
    if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

struct Motif {
  std::size_t center = 0;
  std::vector<std::size_t> members;
};

// Quadratic brute-force motif search written directly from the definitions:
// a match of window i is a window j with rigid distance < R that is not a
// trivial match (|i - j| >= m); a motif is the largest mutually non-trivial
// set of matches of a candidate (scanned outward from the candidate), the
// best candidate has the most members, and emitted neighborhoods are removed.
inline std::vector<Motif> motifs(const std::vector<unsigned>& t, std::size_t l, double radius,
                                 std::size_t m, std::size_t k, const MatrixXd& lut) {
  const std::size_t w = t.size() - l + 1;
  MatrixXd d = MatrixXd::Zero(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w));
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) {
      double s = 0.0;
      for (std::size_t o = 0; o < l; ++o) s += lut(t[i + o], t[j + o]);
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  auto dist = [&](std::size_t i, std::size_t j) {
    return d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  auto far_apart = [&](std::size_t a, std::size_t b) { return (a > b ? a - b : b - a) >= m; };

  std::vector<char> alive(w, 1);
  std::vector<Motif> out;
  for (std::size_t round = 0; round < k; ++round) {
    long best = -1;
    std::vector<std::size_t> best_set;
    for (std::size_t i = 0; i < w; ++i) {
      if (!alive[i]) continue;
      std::vector<std::size_t> chosen;
      for (std::size_t j = i + 1; j < w; ++j) {
        if (!alive[j] || !(dist(i, j) < radius)) continue;
        const std::size_t prev = chosen.empty() ? i : chosen.back();
        if (far_apart(j, prev)) chosen.push_back(j);
      }
      std::vector<std::size_t> left;
      for (std::size_t j = i; j > 0; --j) {
        const std::size_t q = j - 1;
        if (!alive[q] || !(dist(i, q) < radius)) continue;
        const std::size_t prev = left.empty() ? i : left.back();
        if (far_apart(q, prev)) left.push_back(q);
      }
      chosen.insert(chosen.end(), left.begin(), left.end());
      if (!chosen.empty()) chosen.push_back(i);
      std::sort(chosen.begin(), chosen.end());
      if (best < 0 || chosen.size() > best_set.size()) {
        best = static_cast<long>(i);
        best_set = chosen;
      }
    }
    if (best < 0) break;
    Motif mo;
    mo.center = static_cast<std::size_t>(best);
    mo.members = best_set;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t c : best_set) {
      double sum = 0.0;
      bool ok = true;
      for (std::size_t j : best_set) {
        sum += dist(c, j);
        ok = ok && dist(c, j) <= radius;
      }
      if (ok && sum < best_sum) {
        best_sum = sum;
        mo.center = c;
      }
    }
    std::vector<std::size_t> blocked = best_set;
    blocked.push_back(static_cast<std::size_t>(best));
    for (std::size_t p : blocked)
      for (std::size_t q = 0; q < w; ++q)
        if (!far_apart(p, q)) alive[q] = 0;
    out.push_back(mo);
  }
  return out;
}

// ---- plain vector-space learners, for the Euclidean reduction checks

inline std::vector<VectorXd> conscience(const std::vector<VectorXd>& data,
                                        std::vector<VectorXd> s, double alpha0, double alpha1,
                                        double b, double c, int passes) {
  const std::size_t k = s.size();
  std::vector<double> p(k, 1.0 / static_cast<double>(k));
  for (int pass = 0; pass < passes; ++pass) {
    const double t = passes > 1 ? static_cast<double>(pass) / (passes - 1) : 0.0;
    const double alpha = alpha0 + (alpha1 - alpha0) * t;
    for (const auto& x : data) {
      std::size_t z = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        const double score = (x - s[i]).squaredNorm() - c * (1.0 / k - p[i]);
        if (score < best) {
          best = score;
          z = i;
        }
      }
      s[z] = s[z] + alpha * (x - s[z]);
      for (std::size_t i = 0; i < k; ++i) p[i] += b * ((i == z ? 1.0 : 0.0) - p[i]);
    }
  }
  return s;
}

inline std::vector<VectorXd> lloyd(const std::vector<VectorXd>& data, std::vector<VectorXd> c,
                                   int max_iters) {
  std::vector<std::size_t> label(data.size(), 0);
  for (int it = 0; it < max_iters; ++it) {
    bool changed = it == 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < c.size(); ++j)
        if ((data[i] - c[j]).norm() < (data[i] - c[best]).norm()) best = j;
      if (best != label[i]) changed = true;
      label[i] = best;
    }
    if (!changed) break;
    for (std::size_t j = 0; j < c.size(); ++j) {
      VectorXd sum = VectorXd::Zero(c[j].size());
      int n = 0;
      for (std::size_t i = 0; i < data.size(); ++i)
        if (label[i] == j) {
          sum += data[i];
          ++n;
        }
      if (n > 0) c[j] = sum / n;
    }
  }
  return c;
}

}  // namespace oracle

#endif  // MSAX_TESTS_ORACLES_HPP
