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

#ifndef MSAX_SE3_HPP
#define MSAX_SE3_HPP

#include <Eigen/Core>

// Closed-form SO(3)/SE(3) exponential and logarithm.
namespace msax::se3 {

using Matrix4 = Eigen::Matrix<double, 4, 4, Eigen::RowMajor>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

Eigen::Matrix3d hat(const Eigen::Vector3d& u);
Eigen::Vector3d vee(const Eigen::Matrix3d& skew);

/// vec(B) = (u1, u2, u3, w1, w2, w3) <-> 4 x 4 se(3) matrix.
Matrix4 hat6(const Vector6& xi);
Vector6 vee6(const Matrix4& b);

Eigen::Matrix3d exp_so3(const Eigen::Vector3d& u);
/// Rotation vector of R. Angle must be below pi - 1e-6.
Eigen::Vector3d log_so3(const Eigen::Matrix3d& r);

Matrix4 exp_se3(const Vector6& xi);
Vector6 log_se3(const Matrix4& t);

Matrix4 inverse(const Matrix4& t);

}  // namespace msax::se3

#endif  // MSAX_SE3_HPP
