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

#include "msax/se3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msax/error.hpp"

namespace msax::se3 {
namespace {

constexpr double kSeriesThreshold = 1e-4;
constexpr double kCutLocusMargin = 1e-6;

// Coefficients of I + a K + b K^2 style expansions in theta = |u|.
struct RodriguesCoefficients {
  double a;  // sin(t)/t
  double b;  // (1 - cos(t))/t^2
  double c;  // (t - sin(t))/t^3
};

RodriguesCoefficients coefficients(double theta) {
  const double t2 = theta * theta;
  if (theta < kSeriesThreshold) {
    return {1.0 - t2 / 6.0 + t2 * t2 / 120.0,
            0.5 - t2 / 24.0 + t2 * t2 / 720.0,
            1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0};
  }
  const double half_sin = std::sin(0.5 * theta);
  return {std::sin(theta) / theta, 2.0 * half_sin * half_sin / t2,
          (theta - std::sin(theta)) / (t2 * theta)};
}

}  // namespace

Eigen::Matrix3d hat(const Eigen::Vector3d& u) {
  Eigen::Matrix3d k;
  k << 0.0, -u.z(), u.y(),
       u.z(), 0.0, -u.x(),
       -u.y(), u.x(), 0.0;
  return k;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& skew) {
  return {skew(2, 1), skew(0, 2), skew(1, 0)};
}

Matrix4 hat6(const Vector6& xi) {
  Matrix4 b = Matrix4::Zero();
  b.topLeftCorner<3, 3>() = hat(xi.head<3>());
  b.topRightCorner<3, 1>() = xi.tail<3>();
  return b;
}

Vector6 vee6(const Matrix4& b) {
  Vector6 xi;
  xi.head<3>() = vee(b.topLeftCorner<3, 3>());
  xi.tail<3>() = b.topRightCorner<3, 1>();
  return xi;
}

Eigen::Matrix3d exp_so3(const Eigen::Vector3d& u) {
  const double theta = u.norm();
  const auto k = hat(u);
  const auto co = coefficients(theta);
  return Eigen::Matrix3d::Identity() + co.a * k + co.b * k * k;
}

Eigen::Vector3d log_so3(const Eigen::Matrix3d& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const Eigen::Vector3d s = 0.5 * vee(r - r.transpose());
  const double sin_theta = s.norm();
  const double theta = std::atan2(sin_theta, c);
  if (theta > std::numbers::pi - kCutLocusMargin) {
    throw InjectivityError("SO(3) logarithm: rotation angle at the cut locus (pi)");
  }
  double scale;
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    scale = 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0;
  } else {
    scale = theta / sin_theta;
  }
  return scale * s;
}

Matrix4 exp_se3(const Vector6& xi) {
  const Eigen::Vector3d u = xi.head<3>();
  const double theta = u.norm();
  const auto k = hat(u);
  const auto k2 = k * k;
  const auto co = coefficients(theta);
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d rot = id + co.a * k + co.b * k2;
  const Eigen::Matrix3d v = id + co.b * k + co.c * k2;
  Matrix4 t = Matrix4::Identity();
  t.topLeftCorner<3, 3>() = rot;
  t.topRightCorner<3, 1>() = v * xi.tail<3>();
  return t;
}

Vector6 log_se3(const Matrix4& t) {
  const Eigen::Vector3d u = log_so3(t.topLeftCorner<3, 3>());
  const double theta = u.norm();
  const auto k = hat(u);
  double d;
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
  } else {
    const double half = 0.5 * theta;
    d = (1.0 - half * std::cos(half) / std::sin(half)) / (theta * theta);
  }
  const Eigen::Matrix3d v_inv =
      Eigen::Matrix3d::Identity() - 0.5 * k + d * k * k;
  Vector6 xi;
  xi.head<3>() = u;
  xi.tail<3>() = v_inv * t.topRightCorner<3, 1>();
  return xi;
}

Matrix4 inverse(const Matrix4& t) {
  Matrix4 inv = Matrix4::Identity();
  const Eigen::Matrix3d rt = t.topLeftCorner<3, 3>().transpose();
  inv.topLeftCorner<3, 3>() = rt;
  inv.topRightCorner<3, 1>() = -rt * t.topRightCorner<3, 1>();
  return inv;
}

}  // namespace msax::se3
