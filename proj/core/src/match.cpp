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

#include "msax/match.hpp"

#include <functional>

namespace msax {
namespace {

void require_codebook(const SymbolSequence& s, const Codebook& cb) {
  if (s.codebook_id != cb.id()) {
    throw IncompatibleArtifactError("sequence '" + s.id + "' was encoded with codebook " +
                                    s.codebook_id + ", not " + cb.id());
  }
}

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.id < b.id;
}

std::vector<Neighbor> top_k(std::vector<Neighbor> all, std::size_t k) {
  std::sort(all.begin(), all.end(), neighbor_less);
  all.resize(std::min(k, all.size()));
  return all;
}

}  // namespace

double symbol_distance(std::span<const Symbol> p, std::span<const Symbol> q,
                       const Eigen::MatrixXd& lut) {
  if (p.size() != q.size()) {
    throw InvalidArgumentError("symbol_distance: lengths differ (" + std::to_string(p.size()) +
                               " vs " + std::to_string(q.size()) + "); use DTW");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += lut(p[i], q[i]);
  return sum;
}

double symbol_distance(const SymbolSequence& p, const SymbolSequence& q, const Codebook& cb) {
  require_codebook(p, cb);
  require_codebook(q, cb);
  return symbol_distance(p.symbols, q.symbols, cb.lut());
}

DtwResult dtw_symbolic(std::span<const Symbol> p, std::span<const Symbol> q,
                       const Eigen::MatrixXd& lut, const DtwOptions& options) {
  return dtw(p.size(), q.size(),
             [&](std::size_t i, std::size_t j) { return lut(p[i], q[j]); }, options);
}

DtwResult dtw_symbolic(const SymbolSequence& p, const SymbolSequence& q, const Codebook& cb,
                       const DtwOptions& options) {
  require_codebook(p, cb);
  require_codebook(q, cb);
  return dtw_symbolic(p.symbols, q.symbols, cb.lut(), options);
}

DtwResult dtw_geodesic(const ManifoldSequence& a, const ManifoldSequence& b,
                       const DtwOptions& options) {
  if (!(a.manifold == b.manifold)) {
    throw IncompatibleManifoldsError("dtw_geodesic: sequences on different manifolds");
  }
  return dtw(a.points.size(), b.points.size(),
             [&](std::size_t i, std::size_t j) { return distance(a.points[i], b.points[j]); },
             options);
}

void SequenceDatabase::add(SymbolSequence entry) {
  if (entry.codebook_id != codebook_id_) {
    throw IncompatibleArtifactError("database uses codebook " + codebook_id_ + ", entry '" +
                                    entry.id + "' uses " + entry.codebook_id);
  }
  entries_.push_back(std::move(entry));
}

void SequenceDatabase::add(SymbolSequence entry, ManifoldSequence raw) {
  const bool parallel = raw_.size() == entries_.size();
  add(std::move(entry));
  if (parallel) raw_.push_back(std::move(raw));
}

std::span<const ManifoldSequence> SequenceDatabase::raw() const noexcept {
  if (raw_.size() != entries_.size()) return {};
  return raw_;
}

std::vector<Neighbor> knn(const SymbolSequence& query, const SequenceDatabase& db,
                          const Codebook& cb, std::size_t k, const DtwOptions& options) {
  if (db.empty()) throw InvalidArgumentError("knn: empty database");
  if (k < 1 || k > db.size()) throw InvalidArgumentError("knn: k must lie in [1, |db|]");
  if (db.codebook_id() != cb.id()) {
    throw IncompatibleArtifactError("knn: database codebook " + db.codebook_id() +
                                    " differs from " + cb.id());
  }
  require_codebook(query, cb);
  DtwOptions opts = options;
  opts.with_path = false;
  std::vector<Neighbor> all;
  all.reserve(db.size());
  for (const auto& e : db.entries()) {
    all.push_back({e.id, dtw_symbolic(query.symbols, e.symbols, cb.lut(), opts).distance, e.label});
  }
  return top_k(std::move(all), k);
}

std::vector<Neighbor> knn_geodesic(const ManifoldSequence& query,
                                   std::span<const ManifoldSequence> db, std::size_t k,
                                   const DtwOptions& options) {
  if (db.empty()) throw InvalidArgumentError("knn_geodesic: empty database");
  if (k < 1 || k > db.size()) throw InvalidArgumentError("knn_geodesic: k must lie in [1, |db|]");
  DtwOptions opts = options;
  opts.with_path = false;
  std::vector<Neighbor> all;
  all.reserve(db.size());
  for (const auto& e : db) {
    all.push_back({e.id, dtw_geodesic(query, e, opts).distance, e.label});
  }
  return top_k(std::move(all), k);
}

std::string nn_classify(const SymbolSequence& query, const SequenceDatabase& db,
                        const Codebook& cb) {
  for (const auto& e : db.entries()) {
    if (!e.label) throw InvalidArgumentError("nn_classify: entry '" + e.id + "' has no label");
  }
  return *knn(query, db, cb, 1).front().label;
}

LooResult leave_one_out_symbolic(const SequenceDatabase& db, const Codebook& cb) {
  if (db.size() < 2) throw InvalidArgumentError("leave-one-out needs at least two entries");
  const auto entries = db.entries();
  LooResult out;
  std::size_t correct = 0;
  for (std::size_t q = 0; q < entries.size(); ++q) {
    SequenceDatabase rest(db.codebook_id());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i != q) rest.add(entries[i]);
    }
    const std::string predicted = nn_classify(entries[q], rest, cb);
    if (entries[q].label && predicted == *entries[q].label) ++correct;
    out.predicted.push_back(predicted);
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(entries.size());
  return out;
}

LooResult leave_one_out_geodesic(std::span<const ManifoldSequence> sequences) {
  if (sequences.size() < 2) throw InvalidArgumentError("leave-one-out needs at least two entries");
  for (const auto& s : sequences) {
    if (!s.label) throw InvalidArgumentError("leave-one-out: sequence '" + s.id + "' has no label");
  }
  const std::size_t n = sequences.size();
  // Symmetric cost: fill the upper triangle once.
  std::vector<double> d(n * n, 0.0);
  const DtwOptions opts{std::nullopt, false};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = dtw_geodesic(sequences[i], sequences[j], opts).distance;
    }
  }
  LooResult out;
  std::size_t correct = 0;
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t best = q == 0 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == q) continue;
      const double di = d[q * n + i];
      const double db = d[q * n + best];
      if (di < db || (di == db && sequences[i].id < sequences[best].id)) best = i;
    }
    out.predicted.push_back(*sequences[best].label);
    if (*sequences[best].label == *sequences[q].label) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return out;
}

SubstringIndex::SubstringIndex(std::span<const SymbolSequence> entries) {
  strings_.reserve(entries.size());
  for (const auto& e : entries) strings_.push_back(e.symbols);
}

std::vector<SubstringIndex::Occurrence> SubstringIndex::find(
    std::span<const Symbol> pattern) const {
  std::vector<Occurrence> out;
  if (pattern.empty()) return out;
  const std::boyer_moore_horspool_searcher searcher(pattern.begin(), pattern.end());
  for (std::size_t e = 0; e < strings_.size(); ++e) {
    const auto& s = strings_[e];
    auto it = s.begin();
    while (true) {
      const auto [first, last] = searcher(it, s.end());
      if (first == s.end() || first == last) break;
      out.push_back({e, static_cast<std::size_t>(first - s.begin())});
      it = first + 1;
    }
  }
  return out;
}

}  // namespace msax
