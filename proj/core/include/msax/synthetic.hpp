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

#ifndef MSAX_SYNTHETIC_HPP
#define MSAX_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msax/dataset.hpp"

namespace msax {

/// Points scattered around `clusters` random prototypes with RMS geodesic
/// radius `spread`; cluster i is drawn with probability skew[i] (uniform when
/// skew is empty). Emitted as a single sequence "mixture".
struct ClustersScenario {
  std::size_t clusters = 3;
  double spread = 0.2;
  std::vector<double> skew;
  std::size_t points = 10000;
};

/// Smooth per-class template trajectories; each execution is a time-warped,
/// noise-perturbed copy of its class template.
struct TrajectoryParams {
  std::size_t classes = 5;
  std::size_t length = 40;
  double noise = 0.03;       // RMS per-frame tangent perturbation
  double amplitude = 0.5;    // RMS tangent excursion of the template
  double separation = 0.8;   // RMS distance of class centers from a common origin
  double warp = 0.05;        // peak time-warp, as a fraction of the duration
  double style = 0.0;        // per-execution amplitude and phase jitter, relative
};

struct LabeledClassesScenario {
  TrajectoryParams trajectory;
  std::size_t executions = 10;
};

/// `repetitions` executions of every class, shuffled and concatenated into
/// one sequence "stream", with one ground-truth segment per execution.
struct ConcatenatedScenario {
  TrajectoryParams trajectory{5, 80};
  std::size_t repetitions = 10;
};

using Scenario = std::variant<ClustersScenario, LabeledClassesScenario, ConcatenatedScenario>;

/// Parses "clusters:k=3,spread=0.2,skew=0.8/0.15/0.05,n=10000",
/// "classes:c=5,n=10,len=40,noise=0.03,amp=0.5,sep=0.8,warp=0.05,style=0" or
/// "concat:c=5,reps=10,len=80,...". Omitted keys keep their defaults.
Scenario parse_scenario(std::string_view text);
std::string to_string(const Scenario& scenario);

/// Deterministic for a given (manifold, scenario, seed).
DatasetFile gen_synthetic(const Manifold& manifold, const Scenario& scenario, std::uint64_t seed);

}  // namespace msax

#endif  // MSAX_SYNTHETIC_HPP
