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

#include "msax/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "msax/error.hpp"

namespace msax {

std::vector<Point> all_points(const DatasetFile& dataset) {
  std::vector<Point> out;
  for (const auto& seq : dataset.sequences) {
    out.insert(out.end(), seq.points.begin(), seq.points.end());
  }
  return out;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgumentError("scenario: bad value for '" + key + "': " + value);
  }
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v < 1 || v != std::floor(v)) {
    throw InvalidArgumentError("scenario: '" + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

double to_nonneg(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v < 0) throw InvalidArgumentError("scenario: '" + key + "' must be non-negative");
  return v;
}

bool apply_trajectory_key(TrajectoryParams& t, const std::string& key, const std::string& value) {
  if (key == "c") {
    t.classes = to_count(key, value);
  } else if (key == "len") {
    t.length = to_count(key, value);
  } else if (key == "noise") {
    t.noise = to_nonneg(key, value);
  } else if (key == "amp") {
    t.amplitude = to_nonneg(key, value);
  } else if (key == "sep") {
    t.separation = to_nonneg(key, value);
  } else if (key == "warp") {
    t.warp = to_nonneg(key, value);
    if (t.warp >= 0.5) throw InvalidArgumentError("scenario: 'warp' must be < 0.5");
  } else if (key == "style") {
    t.style = to_nonneg(key, value);
    if (t.style >= 1.0) throw InvalidArgumentError("scenario: 'style' must be < 1");
  } else {
    return false;
  }
  return true;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string trajectory_string(const TrajectoryParams& t) {
  return "c=" + std::to_string(t.classes) + ",len=" + std::to_string(t.length) +
         ",noise=" + fmt(t.noise) + ",amp=" + fmt(t.amplitude) + ",sep=" + fmt(t.separation) +
         ",warp=" + fmt(t.warp) + ",style=" + fmt(t.style);
}

// A smooth closed-form path: center moved along a few fixed tangent
// directions with sinusoidal weights.
struct Template {
  Point center;
  std::vector<Tangent> directions;
  std::vector<double> frequency;
  std::vector<double> phase;

  Point at(double s, double amplitude) const {
    Tangent v = zero_tangent(center.manifold);
    const double norm = 1.0 / std::sqrt(static_cast<double>(directions.size()));
    for (std::size_t k = 0; k < directions.size(); ++k) {
      const double w = std::sin(2.0 * std::numbers::pi * frequency[k] * s + phase[k]);
      v.data += (amplitude * norm * w) * directions[k].data;
    }
    const double n = tangent_norm(v);
    if (n > 2.5) v.data *= 2.5 / n;
    return exp_map(center, v);
  }
};

std::vector<Template> make_templates(const Manifold& manifold, const TrajectoryParams& t,
                                     std::mt19937_64& rng) {
  const Point origin = random_point(manifold, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Template> out;
  for (std::size_t c = 0; c < t.classes; ++c) {
    Template tpl{exp_map(origin, random_tangent(origin, t.separation, rng)), {}, {}, {}};
    for (int k = 0; k < 3; ++k) {
      tpl.directions.push_back(random_tangent(tpl.center, 1.0, rng));
      tpl.frequency.push_back(0.5 + 0.5 * k + 0.5 * unit(rng));
      tpl.phase.push_back(2.0 * std::numbers::pi * unit(rng));
    }
    out.push_back(std::move(tpl));
  }
  return out;
}

std::vector<Point> execution(const Template& base, const TrajectoryParams& t,
                             std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double u = sym(rng) * t.warp;
  Template tpl = base;
  double amplitude = t.amplitude;
  if (t.style > 0) {
    amplitude *= 1.0 + t.style * sym(rng);
    for (auto& ph : tpl.phase) ph += t.style * std::numbers::pi * sym(rng);
  }
  std::vector<Point> frames;
  frames.reserve(t.length);
  const double span = t.length > 1 ? static_cast<double>(t.length - 1) : 1.0;
  for (std::size_t i = 0; i < t.length; ++i) {
    const double x = static_cast<double>(i) / span;
    const double s = x + u * std::sin(std::numbers::pi * x);
    const Point clean = tpl.at(s, amplitude);
    frames.push_back(t.noise > 0 ? exp_map(clean, random_tangent(clean, t.noise, rng)) : clean);
  }
  return frames;
}

std::string class_label(std::size_t c) { return "class" + std::to_string(c); }

DatasetFile gen_clusters(const Manifold& manifold, const ClustersScenario& sc,
                         std::mt19937_64& rng) {
  if (!sc.skew.empty() && sc.skew.size() != sc.clusters) {
    throw InvalidArgumentError("scenario: skew needs one weight per cluster");
  }
  DatasetFile out;
  out.manifold = manifold;
  // Prototypes are kept well apart relative to the spread when possible.
  for (std::size_t c = 0; c < sc.clusters; ++c) {
    Point best = random_point(manifold, rng);
    double best_gap = -1.0;
    for (int attempt = 0; attempt < 50; ++attempt) {
      Point cand = attempt == 0 ? best : random_point(manifold, rng);
      double gap = std::numeric_limits<double>::infinity();
      for (const auto& t : out.templates) gap = std::min(gap, distance(cand, t));
      if (gap > best_gap) {
        best_gap = gap;
        best = cand;
      }
      if (gap > 6.0 * sc.spread) break;
    }
    out.templates.push_back(best);
  }
  std::vector<double> weights = sc.skew;
  if (weights.empty()) weights.assign(sc.clusters, 1.0);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  ManifoldSequence seq;
  seq.manifold = manifold;
  seq.id = "mixture";
  seq.points.reserve(sc.points);
  for (std::size_t i = 0; i < sc.points; ++i) {
    const Point& center = out.templates[pick(rng)];
    seq.points.push_back(exp_map(center, random_tangent(center, sc.spread, rng)));
  }
  out.sequences.push_back(std::move(seq));
  return out;
}

DatasetFile gen_classes(const Manifold& manifold, const LabeledClassesScenario& sc,
                        std::mt19937_64& rng) {
  DatasetFile out;
  out.manifold = manifold;
  const auto templates = make_templates(manifold, sc.trajectory, rng);
  for (const auto& t : templates) out.templates.push_back(t.center);
  for (std::size_t c = 0; c < templates.size(); ++c) {
    for (std::size_t e = 0; e < sc.executions; ++e) {
      ManifoldSequence seq;
      seq.manifold = manifold;
      seq.id = class_label(c) + "_exec" + std::to_string(e);
      seq.label = class_label(c);
      seq.points = execution(templates[c], sc.trajectory, rng);
      out.sequences.push_back(std::move(seq));
    }
  }
  return out;
}

DatasetFile gen_concat(const Manifold& manifold, const ConcatenatedScenario& sc,
                       std::mt19937_64& rng) {
  DatasetFile out;
  out.manifold = manifold;
  const auto templates = make_templates(manifold, sc.trajectory, rng);
  for (const auto& t : templates) out.templates.push_back(t.center);
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < templates.size(); ++c) {
    for (std::size_t r = 0; r < sc.repetitions; ++r) order.push_back(c);
  }
  std::shuffle(order.begin(), order.end(), rng);
  ManifoldSequence seq;
  seq.manifold = manifold;
  seq.id = "stream";
  for (std::size_t c : order) {
    const std::size_t begin = seq.points.size();
    auto frames = execution(templates[c], sc.trajectory, rng);
    seq.points.insert(seq.points.end(), frames.begin(), frames.end());
    out.segments.push_back({seq.id, begin, seq.points.size(), class_label(c)});
  }
  out.sequences.push_back(std::move(seq));
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string_view::npos && colon + 1 < text.size()) {
    for (const auto& item : split(text.substr(colon + 1), ',')) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InvalidArgumentError("scenario: expected key=value, got '" + item + "'");
      }
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  if (kind == "clusters") {
    ClustersScenario sc;
    for (const auto& [key, value] : kv) {
      if (key == "k") {
        sc.clusters = to_count(key, value);
      } else if (key == "spread") {
        sc.spread = to_nonneg(key, value);
      } else if (key == "n") {
        sc.points = to_count(key, value);
      } else if (key == "skew") {
        sc.skew.clear();
        for (const auto& w : split(value, '/')) sc.skew.push_back(to_nonneg(key, w));
      } else {
        throw InvalidArgumentError("scenario: unknown key '" + key + "' for clusters");
      }
    }
    if (!sc.skew.empty()) {
      if (sc.skew.size() != sc.clusters) {
        throw InvalidArgumentError("scenario: skew needs one weight per cluster");
      }
      double total = 0.0;
      for (double w : sc.skew) total += w;
      if (total <= 0.0) throw InvalidArgumentError("scenario: skew weights sum to zero");
    }
    return sc;
  }
  if (kind == "classes") {
    LabeledClassesScenario sc;
    for (const auto& [key, value] : kv) {
      if (key == "n") {
        sc.executions = to_count(key, value);
      } else if (!apply_trajectory_key(sc.trajectory, key, value)) {
        throw InvalidArgumentError("scenario: unknown key '" + key + "' for classes");
      }
    }
    return sc;
  }
  if (kind == "concat") {
    ConcatenatedScenario sc;
    for (const auto& [key, value] : kv) {
      if (key == "reps") {
        sc.repetitions = to_count(key, value);
      } else if (!apply_trajectory_key(sc.trajectory, key, value)) {
        throw InvalidArgumentError("scenario: unknown key '" + key + "' for concat");
      }
    }
    return sc;
  }
  throw InvalidArgumentError("scenario: unknown kind '" + kind + "'");
}

std::string to_string(const Scenario& scenario) {
  struct Visitor {
    std::string operator()(const ClustersScenario& s) const {
      std::string out = "clusters:k=" + std::to_string(s.clusters) + ",spread=" + fmt(s.spread) +
                        ",n=" + std::to_string(s.points);
      if (!s.skew.empty()) {
        out += ",skew=";
        for (std::size_t i = 0; i < s.skew.size(); ++i) {
          if (i) out += '/';
          out += fmt(s.skew[i]);
        }
      }
      return out;
    }
    std::string operator()(const LabeledClassesScenario& s) const {
      return "classes:n=" + std::to_string(s.executions) + "," + trajectory_string(s.trajectory);
    }
    std::string operator()(const ConcatenatedScenario& s) const {
      return "concat:reps=" + std::to_string(s.repetitions) + "," +
             trajectory_string(s.trajectory);
    }
  };
  return std::visit(Visitor{}, scenario);
}

DatasetFile gen_synthetic(const Manifold& manifold, const Scenario& scenario, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DatasetFile out = std::visit(
      [&](const auto& sc) -> DatasetFile {
        using T = std::decay_t<decltype(sc)>;
        if constexpr (std::is_same_v<T, ClustersScenario>) {
          return gen_clusters(manifold, sc, rng);
        } else if constexpr (std::is_same_v<T, LabeledClassesScenario>) {
          return gen_classes(manifold, sc, rng);
        } else {
          return gen_concat(manifold, sc, rng);
        }
      },
      scenario);
  out.provenance = "synthetic manifold=" + manifold.to_string() + " scenario=" +
                   to_string(scenario) + " seed=" + std::to_string(seed);
  return out;
}

}  // namespace msax
