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

#ifndef MSAX_FEATURES_HPP
#define MSAX_FEATURES_HPP

#include <span>

#include <Eigen/Core>

#include "msax/geometry.hpp"

namespace msax {

/// Histogram of oriented optical flow in square-root form, a point on S^{B-1}.
///
/// Each flow vector (x, y) adds its magnitude to the bin of its primary angle
/// theta = atan(y/x) in [-pi/2, pi/2), split into B equal bins. Vectors with
/// x = 0 land in the last bin; vectors shorter than 1e-12 are ignored. The
/// histogram is normalized to unit mass and square-rooted element-wise.
Point hoof(std::span<const Eigen::Vector2d> flow, int bins);

/// Affine-invariant shape: projector onto the column span of the centered
/// m x 2 landmark matrix, a point on Gr(m, 2).
Point landmarks_to_grassmann(const Eigen::MatrixX2d& landmarks);

}  // namespace msax

#endif  // MSAX_FEATURES_HPP
