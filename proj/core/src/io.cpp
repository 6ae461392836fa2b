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

#include "msax/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "msax/error.hpp"

namespace msax {

using nlohmann::json;

namespace {

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Point point_from(const Manifold& manifold, const json& j) {
  if (!j.is_array()) throw ValidationError("point must be an array of numbers");
  Point p{manifold, Eigen::VectorXd(static_cast<Eigen::Index>(j.size()))};
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError("point must be an array of numbers");
    p.data(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return p;
}

json optional_label(const std::optional<std::string>& label) {
  return label ? json(*label) : json(nullptr);
}

std::optional<std::string> label_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

// Converts parser/type errors from the json library into validation errors.
template <typename F>
auto guarded(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": malformed content: " + e.what());
  }
}

json load_doc(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": not a valid artifact: " + e.what());
  }
}

}  // namespace

json wrap_artifact(std::string_view kind, json payload) {
  json doc = json::object();
  doc["format"] = "msax";
  doc["format_version"] = kFormatVersion;
  doc["kind"] = std::string(kind);
  doc["payload"] = std::move(payload);
  return doc;
}

json unwrap_artifact(const json& doc, std::string_view kind) {
  if (!doc.is_object() || !doc.contains("format") || doc.at("format") != "msax") {
    throw IncompatibleArtifactError("not an msax artifact");
  }
  if (!doc.contains("format_version") || !doc.at("format_version").is_number_integer()) {
    throw ValidationError("artifact has no integer format_version");
  }
  const auto version = doc.at("format_version").get<std::int64_t>();
  if (version > kFormatVersion || version < 1) {
    throw VersionError("artifact format_version " + std::to_string(version) +
                       " is not supported (this build reads up to " +
                       std::to_string(kFormatVersion) + ")");
  }
  const std::string actual = doc.contains("kind") && doc.at("kind").is_string()
                                 ? doc.at("kind").get<std::string>()
                                 : std::string("<none>");
  if (actual != kind) {
    throw IncompatibleArtifactError("expected a " + std::string(kind) + " artifact, found " +
                                    actual);
  }
  if (!doc.contains("payload")) throw ValidationError("artifact has no payload");
  return doc.at("payload");
}

std::string dump_artifact(const json& doc) { return doc.dump(1) + "\n"; }

// ---- dataset

json dataset_to_json(const DatasetFile& dataset) {
  json seqs = json::array();
  for (const auto& s : dataset.sequences) {
    json points = json::array();
    for (const auto& p : s.points) points.push_back(vector_json(p.data));
    seqs.push_back({{"id", s.id}, {"label", optional_label(s.label)}, {"points", points}});
  }
  json segments = json::array();
  for (const auto& g : dataset.segments) {
    segments.push_back(
        {{"sequence", g.sequence_id}, {"begin", g.begin}, {"end", g.end}, {"label", g.label}});
  }
  json templates = json::array();
  for (const auto& t : dataset.templates) templates.push_back(vector_json(t.data));
  return {{"manifold", dataset.manifold.to_string()},
          {"sequences", seqs},
          {"segments", segments},
          {"templates", templates},
          {"provenance", dataset.provenance}};
}

DatasetFile dataset_from_json(const json& payload) {
  DatasetFile out = guarded("dataset", [&] {
    DatasetFile d;
    d.manifold = Manifold::parse(payload.at("manifold").get<std::string>());
    for (const auto& s : payload.at("sequences")) {
      ManifoldSequence seq;
      seq.manifold = d.manifold;
      seq.id = s.at("id").get<std::string>();
      seq.label = label_from(s, "label");
      for (const auto& p : s.at("points")) seq.points.push_back(point_from(d.manifold, p));
      d.sequences.push_back(std::move(seq));
    }
    if (payload.contains("segments")) {
      for (const auto& g : payload.at("segments")) {
        d.segments.push_back({g.at("sequence").get<std::string>(),
                              g.at("begin").get<std::size_t>(), g.at("end").get<std::size_t>(),
                              g.at("label").get<std::string>()});
      }
    }
    if (payload.contains("templates")) {
      for (const auto& t : payload.at("templates")) d.templates.push_back(point_from(d.manifold, t));
    }
    if (payload.contains("provenance")) d.provenance = payload.at("provenance").get<std::string>();
    return d;
  });
  for (const auto& seq : out.sequences) validate_sequence(seq);
  for (std::size_t i = 0; i < out.templates.size(); ++i) {
    if (auto v = validate_point(out.templates[i])) {
      throw ValidationError("template " + std::to_string(i) + ": " + v->invariant +
                            " violated by " + std::to_string(v->magnitude));
    }
  }
  for (const auto& g : out.segments) {
    const auto it = std::find_if(out.sequences.begin(), out.sequences.end(),
                                 [&](const auto& s) { return s.id == g.sequence_id; });
    if (it == out.sequences.end() || g.begin >= g.end || g.end > it->points.size()) {
      throw ValidationError("segment of '" + g.sequence_id + "' is out of range");
    }
  }
  return out;
}

// ---- codebook

json codebook_to_json(const Codebook& cb) {
  json symbols = json::array();
  for (const auto& s : cb.symbols()) symbols.push_back(vector_json(s.data));
  json lut = json::array();
  for (Eigen::Index i = 0; i < cb.lut().rows(); ++i) lut.push_back(vector_json(cb.lut().row(i)));
  json params = json::object();
  for (const auto& [k, v] : cb.meta().params) params[k] = v;
  return {{"manifold", cb.manifold().to_string()},
          {"id", cb.id()},
          {"symbols", symbols},
          {"lut", lut},
          {"training",
           {{"method", cb.meta().method}, {"params", params}, {"seed", cb.meta().seed}}}};
}

Codebook codebook_from_json(const json& payload) {
  return guarded("codebook", [&] {
    const Manifold manifold = Manifold::parse(payload.at("manifold").get<std::string>());
    std::vector<Point> symbols;
    for (const auto& s : payload.at("symbols")) symbols.push_back(point_from(manifold, s));
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (auto v = validate_point(symbols[i])) {
        throw ValidationError("codebook symbol " + std::to_string(i) + ": " + v->invariant +
                              " violated by " + std::to_string(v->magnitude));
      }
    }
    TrainingMeta meta;
    if (payload.contains("training")) {
      const auto& t = payload.at("training");
      meta.method = t.at("method").get<std::string>();
      for (const auto& [k, v] : t.at("params").items()) meta.params[k] = v.get<double>();
      meta.seed = t.at("seed").get<std::uint64_t>();
    }
    Codebook cb(manifold, std::move(symbols), std::move(meta));

    const auto& lut = payload.at("lut");
    bool lut_ok = lut.is_array() && lut.size() == cb.size();
    for (std::size_t i = 0; lut_ok && i < cb.size(); ++i) {
      lut_ok = lut[i].is_array() && lut[i].size() == cb.size();
      for (std::size_t j = 0; lut_ok && j < cb.size(); ++j) {
        const double stored = lut[i][j].get<double>();
        const double fresh = cb.lut()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        lut_ok = std::abs(stored - fresh) <= 1e-12 * std::max(1.0, std::abs(fresh));
      }
    }
    if (!lut_ok) throw ValidationError("codebook integrity: lut disagrees with its symbols");
    if (payload.at("id").get<std::string>() != cb.id()) {
      throw ValidationError("codebook integrity: id disagrees with its symbols");
    }
    return cb;
  });
}

// ---- symbol sequences

json symbols_to_json(std::span<const SymbolSequence> seqs) {
  json arr = json::array();
  for (const auto& s : seqs) {
    arr.push_back({{"id", s.id},
                   {"label", optional_label(s.label)},
                   {"codebook", s.codebook_id},
                   {"window", s.window},
                   {"source_len", s.source_len},
                   {"symbols", s.symbols}});
  }
  return {{"sequences", arr}};
}

std::vector<SymbolSequence> symbols_from_json(const json& payload) {
  auto out = guarded("symbols", [&] {
    std::vector<SymbolSequence> seqs;
    for (const auto& s : payload.at("sequences")) {
      SymbolSequence ss;
      ss.id = s.at("id").get<std::string>();
      ss.label = label_from(s, "label");
      ss.codebook_id = s.at("codebook").get<std::string>();
      ss.window = s.at("window").get<int>();
      ss.source_len = s.at("source_len").get<std::size_t>();
      ss.symbols = s.at("symbols").get<std::vector<Symbol>>();
      seqs.push_back(std::move(ss));
    }
    return seqs;
  });
  for (const auto& ss : out) {
    try {
      validate_symbols(ss, std::numeric_limits<Symbol>::max());
    } catch (const Error& e) {
      throw ValidationError("symbol sequence '" + ss.id + "': " + e.what());
    }
  }
  return out;
}

// ---- motifs

json motifs_to_json(const MotifReport& report) {
  json motifs = json::array();
  for (const auto& m : report.motifs) {
    motifs.push_back({{"center", m.center_pos},
                      {"members", m.member_positions},
                      {"distances", m.member_distances},
                      {"count", m.count}});
  }
  const auto& q = report.query;
  return {{"source", report.source_id},
          {"codebook", report.codebook_id},
          {"query",
           {{"length", q.length},
            {"radius", q.radius},
            {"trivial", q.trivial_radius},
            {"top", q.top_k},
            {"dtw", q.use_dtw}}},
          {"motifs", motifs}};
}

MotifReport motifs_from_json(const json& payload) {
  return guarded("motifs", [&] {
    MotifReport r;
    r.source_id = payload.at("source").get<std::string>();
    r.codebook_id = payload.at("codebook").get<std::string>();
    const auto& q = payload.at("query");
    r.query.length = q.at("length").get<std::size_t>();
    r.query.radius = q.at("radius").get<double>();
    r.query.trivial_radius = q.at("trivial").get<std::size_t>();
    r.query.top_k = q.at("top").get<std::size_t>();
    r.query.use_dtw = q.at("dtw").get<bool>();
    for (const auto& m : payload.at("motifs")) {
      MotifResult res;
      res.center_pos = m.at("center").get<std::size_t>();
      res.member_positions = m.at("members").get<std::vector<std::size_t>>();
      res.member_distances = m.at("distances").get<std::vector<double>>();
      res.count = m.at("count").get<std::size_t>();
      if (res.member_positions.size() != res.member_distances.size() ||
          res.count != res.member_positions.size()) {
        throw ValidationError("motif member lists are inconsistent");
      }
      r.motifs.push_back(std::move(res));
    }
    return r;
  });
}

// ---- files

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buf.str();
}

void save_dataset(const std::filesystem::path& path, const DatasetFile& dataset) {
  write_text(path, dump_artifact(wrap_artifact("dataset", dataset_to_json(dataset))));
}

DatasetFile load_dataset(const std::filesystem::path& path) {
  return dataset_from_json(unwrap_artifact(load_doc(path), "dataset"));
}

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
  write_text(path, dump_artifact(wrap_artifact("codebook", codebook_to_json(cb))));
}

Codebook load_codebook(const std::filesystem::path& path) {
  return codebook_from_json(unwrap_artifact(load_doc(path), "codebook"));
}

void save_symbols(const std::filesystem::path& path, std::span<const SymbolSequence> seqs) {
  write_text(path, dump_artifact(wrap_artifact("symbols", symbols_to_json(seqs))));
}

std::vector<SymbolSequence> load_symbols(const std::filesystem::path& path) {
  return symbols_from_json(unwrap_artifact(load_doc(path), "symbols"));
}

void save_motifs(const std::filesystem::path& path, const MotifReport& report) {
  write_text(path, dump_artifact(wrap_artifact("motifs", motifs_to_json(report))));
}

MotifReport load_motifs(const std::filesystem::path& path) {
  return motifs_from_json(unwrap_artifact(load_doc(path), "motifs"));
}

void save_report(const std::filesystem::path& path, const json& report) {
  write_text(path, dump_artifact(wrap_artifact("bench_report", report)));
}

json load_report(const std::filesystem::path& path) {
  return unwrap_artifact(load_doc(path), "bench_report");
}

std::string symbols_to_text(std::span<const SymbolSequence> seqs, const Codebook& cb) {
  std::string out;
  for (const auto& s : seqs) {
    if (s.codebook_id != cb.id()) {
      throw IncompatibleArtifactError("sequence '" + s.id + "' was encoded with codebook " +
                                      s.codebook_id + ", not " + cb.id());
    }
    out += s.id + "\t" + s.label.value_or("") + "\t" + cb.render(s.symbols) + "\n";
  }
  return out;
}

}  // namespace msax
