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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "msax/error.hpp"
#include "oracles.hpp"

namespace msax::se3 {
namespace {

Vector6 random_xi(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Vector6 xi;
  for (int i = 0; i < 6; ++i) xi(i) = g(rng);
  return xi;
}

TEST(Se3, HatVeeInverse) {
  std::mt19937_64 rng(1);
  const Vector6 xi = random_xi(rng, 1.0);
  EXPECT_EQ(vee6(hat6(xi)), xi);
  const Eigen::Matrix3d k = hat(xi.head<3>());
  EXPECT_LT((k + k.transpose()).norm(), 1e-15);
  EXPECT_LT((k * Eigen::Vector3d(1, 2, 3) - xi.head<3>().cross(Eigen::Vector3d(1, 2, 3))).norm(),
            1e-14);
}

TEST(Se3, ExpMatchesMatrixExponential) {
  std::mt19937_64 rng(2);
  for (double scale : {1e-7, 1e-3, 0.3, 1.0}) {
    for (int t = 0; t < 50; ++t) {
      const Vector6 xi = random_xi(rng, scale);
      if (xi.head<3>().norm() >= 3.0) continue;
      const Eigen::Matrix4d want = oracle::matrix_exp(Eigen::Matrix4d(hat6(xi)));
      EXPECT_LT((Eigen::Matrix4d(exp_se3(xi)) - want).cwiseAbs().maxCoeff(), 1e-12) << scale;
    }
  }
}

TEST(Se3, LogInvertsExp) {
  std::mt19937_64 rng(3);
  for (double scale : {1e-9, 1e-5, 0.1, 0.8}) {
    for (int t = 0; t < 50; ++t) {
      const Vector6 xi = random_xi(rng, scale);
      if (xi.head<3>().norm() >= 3.0) continue;
      EXPECT_LT((log_se3(exp_se3(xi)) - xi).cwiseAbs().maxCoeff(), 1e-10) << scale;
    }
  }
}

TEST(Se3, LogMatchesMatrixLogarithm) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Vector6 xi = random_xi(rng, 0.7);
    if (xi.head<3>().norm() >= 3.0) continue;
    const Matrix4 m = exp_se3(xi);
    const Eigen::Matrix4d want = oracle::matrix_log(Eigen::Matrix4d(m));
    EXPECT_LT((Eigen::Matrix4d(hat6(log_se3(m))) - want).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Se3, RotationNearPiStillInverts) {
  const Eigen::Vector3d u = Eigen::Vector3d(1, 2, 2).normalized() * (std::numbers::pi - 1e-3);
  EXPECT_LT((log_so3(exp_so3(u)) - u).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Se3, HalfTurnIsRejected) {
  const Eigen::Vector3d u(0, 0, std::numbers::pi);
  EXPECT_THROW(log_so3(exp_so3(u)), InjectivityError);
}

TEST(Se3, InverseComposesToIdentity) {
  std::mt19937_64 rng(5);
  const Matrix4 t = exp_se3(random_xi(rng, 1.0));
  EXPECT_LT((Eigen::Matrix4d(t * inverse(t)) - Eigen::Matrix4d::Identity()).norm(), 1e-14);
}

}  // namespace
}  // namespace msax::se3
