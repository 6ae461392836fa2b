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

#ifndef MSAX_DATASET_HPP
#define MSAX_DATASET_HPP

#include <string>
#include <vector>

#include "msax/geometry.hpp"
#include "msax/stats.hpp"

namespace msax {

/// Ground-truth span [begin, end) of frames inside one sequence.
struct Segment {
  std::string sequence_id;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string label;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct DatasetFile {
  Manifold manifold = Manifold::euclidean(1);
  std::vector<ManifoldSequence> sequences;
  std::vector<Segment> segments;
  /// Generating prototypes (cluster centers) when known.
  std::vector<Point> templates;
  std::string provenance;
};

/// All frames of all sequences, in order.
std::vector<Point> all_points(const DatasetFile& dataset);

}  // namespace msax

#endif  // MSAX_DATASET_HPP
