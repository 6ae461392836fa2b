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

#include "msax/encode.hpp"

#include <algorithm>

#include "msax/error.hpp"

namespace msax {

void validate_symbols(const SymbolSequence& ss, std::size_t k) {
  if (ss.window < 1) throw ValidationError("symbol sequence '" + ss.id + "': window < 1");
  if (ss.symbols.size() != window_count(ss.source_len, ss.window)) {
    throw ValidationError("symbol sequence '" + ss.id + "': length " +
                          std::to_string(ss.symbols.size()) + " != ceil(" +
                          std::to_string(ss.source_len) + "/" + std::to_string(ss.window) + ")");
  }
  for (Symbol s : ss.symbols) {
    if (s >= k) {
      throw ValidationError("symbol sequence '" + ss.id + "': index " + std::to_string(s) +
                            " outside [0, " + std::to_string(k) + ")");
    }
  }
}

SymbolSequence encode(const ManifoldSequence& seq, const Codebook& cb, int window,
                      const KarcherConfig& cfg) {
  if (!(seq.manifold == cb.manifold())) {
    throw IncompatibleManifoldsError("encode: sequence on " + seq.manifold.to_string() +
                                     ", codebook on " + cb.manifold().to_string());
  }
  const ManifoldSequence means = paa(seq, window, cfg);
  SymbolSequence out{cb.id(), window, {}, seq.points.size(), seq.id, seq.label};
  out.symbols.reserve(means.points.size());
  for (const auto& p : means.points) out.symbols.push_back(assign(p, cb));
  return out;
}

ManifoldSequence reconstruct(const SymbolSequence& ss, const Codebook& cb) {
  if (ss.codebook_id != cb.id()) {
    throw IncompatibleArtifactError("reconstruct: sequence was encoded with codebook " +
                                    ss.codebook_id + ", got " + cb.id());
  }
  validate_symbols(ss, cb.size());
  ManifoldSequence out{cb.manifold(), {}, ss.id, ss.label};
  out.points.reserve(ss.source_len);
  for (Symbol s : ss.symbols) {
    for (int r = 0; r < ss.window && out.points.size() < ss.source_len; ++r) {
      out.points.push_back(cb.symbol(s));
    }
  }
  return out;
}

int bits_per_symbol(std::size_t k) {
  if (k < 1) throw InvalidArgumentError("bits_per_symbol: empty alphabet");
  int bits = 0;
  while ((std::size_t{1} << bits) < k) ++bits;
  return bits;
}

BitBudget bit_budget(std::size_t frames, std::size_t symbols, std::size_t k,
                     std::size_t original_dim, int bits_per_scalar) {
  if (frames == 0 || original_dim == 0 || bits_per_scalar < 1) {
    throw InvalidArgumentError("bit_budget: frames, dim and bits_per_scalar must be positive");
  }
  BitBudget b;
  b.original_bits = static_cast<std::uint64_t>(frames) * original_dim *
                    static_cast<std::uint64_t>(bits_per_scalar);
  b.symbolic_bits = static_cast<std::uint64_t>(symbols) *
                    static_cast<std::uint64_t>(bits_per_symbol(k));
  // One correctly rounded division, so e.g. 319400 / 320000 is the double
  // nearest to 0.998125.
  const double saved = b.symbolic_bits <= b.original_bits
                           ? static_cast<double>(b.original_bits - b.symbolic_bits)
                           : -static_cast<double>(b.symbolic_bits - b.original_bits);
  b.compression_ratio = saved / static_cast<double>(b.original_bits);
  return b;
}

BitBudget bit_budget(const SymbolSequence& ss, std::size_t k, std::size_t original_dim,
                     int bits_per_scalar) {
  return bit_budget(ss.source_len, ss.symbols.size(), k, original_dim, bits_per_scalar);
}

}  // namespace msax
