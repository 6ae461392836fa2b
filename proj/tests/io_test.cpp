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

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "msax/error.hpp"

namespace msax {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<Point> random_points(const Manifold& m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(m, rng));
  return out;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("msax_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

DatasetFile sample_dataset() {
  const Manifold m = Manifold::product_se3(2);
  DatasetFile d;
  d.manifold = m;
  d.sequences.push_back({m, random_points(m, 5, 1), "first", std::string("walk")});
  d.sequences.push_back({m, random_points(m, 3, 2), "second", std::nullopt});
  d.segments.push_back({"first", 1, 4, "walk"});
  d.templates = random_points(m, 2, 3);
  d.provenance = "unit test";
  return d;
}

Codebook sample_codebook() {
  const Manifold m = Manifold::grassmann(5, 2);
  TrainingMeta meta{"kmeans", {{"k", 4.0}, {"max_iters", 100.0}}, 9};
  return Codebook(m, random_points(m, 4, 4), meta);
}

TEST(Envelope, RoundTripAndChecks) {
  const json doc = wrap_artifact("codebook", json{{"x", 1}});
  EXPECT_EQ(doc.at("format"), "msax");
  EXPECT_EQ(doc.at("format_version"), kFormatVersion);
  EXPECT_EQ(unwrap_artifact(doc, "codebook"), (json{{"x", 1}}));
  EXPECT_THROW(unwrap_artifact(doc, "dataset"), IncompatibleArtifactError);

  json newer = doc;
  newer["format_version"] = kFormatVersion + 1;
  EXPECT_THROW(unwrap_artifact(newer, "codebook"), VersionError);
  json foreign = doc;
  foreign["format"] = "other";
  EXPECT_THROW(unwrap_artifact(foreign, "codebook"), IncompatibleArtifactError);
  json empty = doc;
  empty.erase("payload");
  EXPECT_THROW(unwrap_artifact(empty, "codebook"), ValidationError);
}

TEST_F(TempDir, DatasetRoundTripIsExact) {
  const DatasetFile d = sample_dataset();
  save_dataset(dir / "d.json", d);
  const DatasetFile back = load_dataset(dir / "d.json");
  EXPECT_EQ(back.manifold, d.manifold);
  ASSERT_EQ(back.sequences.size(), 2u);
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_EQ(back.sequences[s].id, d.sequences[s].id);
    EXPECT_EQ(back.sequences[s].label, d.sequences[s].label);
    ASSERT_EQ(back.sequences[s].points.size(), d.sequences[s].points.size());
    for (std::size_t i = 0; i < d.sequences[s].points.size(); ++i)
      EXPECT_EQ(back.sequences[s].points[i].data, d.sequences[s].points[i].data);
  }
  EXPECT_EQ(back.segments, d.segments);
  ASSERT_EQ(back.templates.size(), 2u);
  EXPECT_EQ(back.templates[1].data, d.templates[1].data);
  EXPECT_EQ(back.provenance, "unit test");
  // Saving again reproduces the bytes.
  save_dataset(dir / "again.json", back);
  EXPECT_EQ(read_text(dir / "d.json"), read_text(dir / "again.json"));
}

TEST(Dataset, RejectsInvalidContent) {
  json payload = dataset_to_json(sample_dataset());
  json bad_point = payload;
  bad_point["sequences"][0]["points"][0][0] = 7.5;
  EXPECT_THROW(dataset_from_json(bad_point), ValidationError);
  json bad_segment = payload;
  bad_segment["segments"][0]["end"] = 99;
  EXPECT_THROW(dataset_from_json(bad_segment), ValidationError);
  json unknown = payload;
  unknown["segments"][0]["sequence"] = "nope";
  EXPECT_THROW(dataset_from_json(unknown), ValidationError);
  json missing = payload;
  missing.erase("manifold");
  EXPECT_THROW(dataset_from_json(missing), ValidationError);
}

TEST_F(TempDir, CodebookRoundTrip) {
  const Codebook cb = sample_codebook();
  save_codebook(dir / "cb.json", cb);
  const Codebook back = load_codebook(dir / "cb.json");
  EXPECT_EQ(back.id(), cb.id());
  EXPECT_EQ(back.manifold(), cb.manifold());
  EXPECT_EQ(back.lut(), cb.lut());
  EXPECT_EQ(back.meta(), cb.meta());
  for (std::size_t i = 0; i < cb.size(); ++i) EXPECT_EQ(back.symbols()[i].data, cb.symbols()[i].data);
}

TEST(Codebook, IntegrityChecks) {
  const json payload = codebook_to_json(sample_codebook());
  json lut = payload;
  lut["lut"][0][1] = lut["lut"][0][1].get<double>() + 0.25;
  EXPECT_THROW(codebook_from_json(lut), ValidationError);
  json id = payload;
  id["id"] = "0123456789abcdef";
  EXPECT_THROW(codebook_from_json(id), ValidationError);
  json symbol = payload;
  symbol["symbols"][0][0] = symbol["symbols"][0][0].get<double>() + 1e-3;
  EXPECT_THROW(codebook_from_json(symbol), ValidationError);
}

TEST_F(TempDir, SymbolsRoundTrip) {
  const Codebook cb = sample_codebook();
  const std::vector<SymbolSequence> seqs{{cb.id(), 3, {0, 3, 2, 1}, 11, "a", "x"},
                                         {cb.id(), 3, {1}, 2, "b", std::nullopt}};
  save_symbols(dir / "s.json", seqs);
  EXPECT_EQ(load_symbols(dir / "s.json"), seqs);
  EXPECT_EQ(symbols_to_text(seqs, cb), "a\tx\tadcb\nb\t\tb\n");
}

TEST(Symbols, RejectsInconsistentLength) {
  json payload = symbols_to_json(std::vector<SymbolSequence>{{"id", 2, {0, 1}, 4, "a", {}}});
  payload["sequences"][0]["source_len"] = 9;
  EXPECT_THROW(symbols_from_json(payload), ValidationError);
  payload["sequences"][0]["source_len"] = 4;
  EXPECT_NO_THROW(symbols_from_json(payload));
  payload["sequences"][0]["symbols"] = json::array({0, -1});
  EXPECT_THROW(symbols_from_json(payload), ValidationError);
}

TEST_F(TempDir, MotifsRoundTrip) {
  MotifReport r{"stream", "00ff00ff00ff00ff", {8, 2.5, 8, 3, false}, {}};
  r.motifs.push_back({10, {2, 10, 30}, {0.5, 0.0, 1.25}, 3});
  r.motifs.push_back({5, {}, {}, 0});
  save_motifs(dir / "m.json", r);
  const MotifReport back = load_motifs(dir / "m.json");
  EXPECT_EQ(back.source_id, r.source_id);
  EXPECT_EQ(back.codebook_id, r.codebook_id);
  EXPECT_EQ(back.query.length, 8u);
  EXPECT_EQ(back.query.radius, 2.5);
  EXPECT_EQ(back.query.top_k, 3u);
  EXPECT_EQ(back.motifs, r.motifs);
}

TEST_F(TempDir, KindMismatchAndIoErrors) {
  save_codebook(dir / "cb.json", sample_codebook());
  EXPECT_THROW(load_dataset(dir / "cb.json"), IncompatibleArtifactError);
  EXPECT_THROW(load_codebook(dir / "missing.json"), IoError);
  write_text(dir / "junk.json", "{not json");
  EXPECT_THROW(load_codebook(dir / "junk.json"), ValidationError);
  EXPECT_THROW(write_text(dir / "no" / "such" / "dir.json", "x"), IoError);
  save_report(dir / "r.json", json{{"a", 1}});
  EXPECT_EQ(load_report(dir / "r.json"), (json{{"a", 1}}));
}

TEST(Dump, Stable) {
  const json doc = wrap_artifact("codebook", codebook_to_json(sample_codebook()));
  EXPECT_EQ(dump_artifact(doc), dump_artifact(json::parse(dump_artifact(doc))));
  EXPECT_EQ(dump_artifact(doc).back(), '\n');
}

}  // namespace
}  // namespace msax
