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

#include "msax/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "msax/error.hpp"

namespace msax {

Point hoof(std::span<const Eigen::Vector2d> flow, int bins) {
  if (bins < 2) throw InvalidArgumentError("hoof: at least two bins required");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(bins);
  for (const auto& v : flow) {
    const double magnitude = v.norm();
    if (!(magnitude >= 1e-12)) continue;
    int bin = bins - 1;
    if (v.x() != 0.0) {
      const double theta = std::atan(v.y() / v.x());
      bin = static_cast<int>(std::floor((theta + 0.5 * std::numbers::pi) * bins / std::numbers::pi));
      bin = std::clamp(bin, 0, bins - 1);
    }
    h(bin) += magnitude;
  }
  const double mass = h.sum();
  if (!(mass > 0.0)) throw DegenerateError("hoof: flow field has no nonzero vector");
  h /= mass;
  return {Manifold::hypersphere(bins), h.cwiseSqrt()};
}

Point landmarks_to_grassmann(const Eigen::MatrixX2d& landmarks) {
  const auto m = static_cast<int>(landmarks.rows());
  if (m < 3) throw InvalidArgumentError("landmarks_to_grassmann: need at least three landmarks");
  const Eigen::MatrixX2d centered = landmarks.rowwise() - landmarks.colwise().mean();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 1e-10 * std::max(1.0, sv(0)))) {
    throw DegenerateError("landmarks_to_grassmann: landmarks are collinear (rank < 2)");
  }
  const Eigen::MatrixXd u = svd.matrixU().leftCols(2);
  Eigen::MatrixXd p = u * u.transpose();
  p = 0.5 * (p + p.transpose()).eval();
  return {Manifold::grassmann(m, 2), Eigen::Map<const Eigen::VectorXd>(p.data(), p.size())};
}

}  // namespace msax
