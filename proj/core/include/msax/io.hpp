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

#ifndef MSAX_IO_HPP
#define MSAX_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "msax/codebook.hpp"
#include "msax/dataset.hpp"
#include "msax/discover.hpp"
#include "msax/encode.hpp"

namespace msax {

inline constexpr int kFormatVersion = 1;

/// Motifs found in one encoded sequence, with the query that produced them.
struct MotifReport {
  std::string source_id;
  std::string codebook_id;
  MotifQuery query;
  std::vector<MotifResult> motifs;
};

// Every artifact is stored as
//   {"format": "msax", "format_version": 1, "kind": <kind>, "payload": {...}}
// with doubles printed in shortest round-trip form.

nlohmann::json wrap_artifact(std::string_view kind, nlohmann::json payload);
/// Checks the envelope and returns the payload. Throws VersionError for a
/// newer format and IncompatibleArtifactError for a different kind.
nlohmann::json unwrap_artifact(const nlohmann::json& doc, std::string_view kind);

nlohmann::json dataset_to_json(const DatasetFile& dataset);
DatasetFile dataset_from_json(const nlohmann::json& payload);
nlohmann::json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& payload);
nlohmann::json symbols_to_json(std::span<const SymbolSequence> seqs);
std::vector<SymbolSequence> symbols_from_json(const nlohmann::json& payload);
nlohmann::json motifs_to_json(const MotifReport& report);
MotifReport motifs_from_json(const nlohmann::json& payload);

/// Canonical text of an artifact (stable across runs for equal content).
std::string dump_artifact(const nlohmann::json& doc);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

void save_dataset(const std::filesystem::path& path, const DatasetFile& dataset);
DatasetFile load_dataset(const std::filesystem::path& path);
void save_codebook(const std::filesystem::path& path, const Codebook& cb);
Codebook load_codebook(const std::filesystem::path& path);
void save_symbols(const std::filesystem::path& path, std::span<const SymbolSequence> seqs);
std::vector<SymbolSequence> load_symbols(const std::filesystem::path& path);
void save_motifs(const std::filesystem::path& path, const MotifReport& report);
MotifReport load_motifs(const std::filesystem::path& path);
void save_report(const std::filesystem::path& path, const nlohmann::json& report);
nlohmann::json load_report(const std::filesystem::path& path);

/// One line per sequence: id <TAB> label <TAB> rendered symbol string.
std::string symbols_to_text(std::span<const SymbolSequence> seqs, const Codebook& cb);

}  // namespace msax

#endif  // MSAX_IO_HPP
