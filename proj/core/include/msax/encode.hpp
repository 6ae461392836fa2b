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

#ifndef MSAX_ENCODE_HPP
#define MSAX_ENCODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msax/codebook.hpp"
#include "msax/stats.hpp"

namespace msax {

/// Symbolic form of a ManifoldSequence: one symbol per aggregation window.
struct SymbolSequence {
  std::string codebook_id;
  int window = 1;
  std::vector<Symbol> symbols;
  std::size_t source_len = 0;
  std::string id;
  std::optional<std::string> label;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

/// Checks M = ceil(N/W) and that every index lies in [0, k).
void validate_symbols(const SymbolSequence& ss, std::size_t k);

/// Windowed means followed by nearest-symbol assignment.
SymbolSequence encode(const ManifoldSequence& seq, const Codebook& cb, int window,
                      const KarcherConfig& cfg = {});

/// Zero-order hold: every symbol's prototype repeated W times, truncated to
/// the source length.
ManifoldSequence reconstruct(const SymbolSequence& ss, const Codebook& cb);

struct BitBudget {
  std::uint64_t original_bits = 0;
  std::uint64_t symbolic_bits = 0;
  double compression_ratio = 0.0;  // 1 - symbolic/original
};

/// Bits per symbol are ceil(log2 K); the raw feature costs
/// frames * dim * bits_per_scalar.
BitBudget bit_budget(std::size_t frames, std::size_t symbols, std::size_t k,
                     std::size_t original_dim, int bits_per_scalar = 32);
BitBudget bit_budget(const SymbolSequence& ss, std::size_t k, std::size_t original_dim,
                     int bits_per_scalar = 32);

/// ceil(log2 k) for k >= 1.
int bits_per_symbol(std::size_t k);

}  // namespace msax

#endif  // MSAX_ENCODE_HPP
