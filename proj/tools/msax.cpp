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

// msax command-line tool.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msax/bench.hpp"
#include "msax/codebook.hpp"
#include "msax/discover.hpp"
#include "msax/encode.hpp"
#include "msax/error.hpp"
#include "msax/io.hpp"
#include "msax/match.hpp"
#include "msax/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace msax;

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

void require_codebook_match(const Manifold& data, const Codebook& cb) {
  if (!(data == cb.manifold())) {
    throw IncompatibleArtifactError("dataset manifold " + data.to_string() +
                                    " does not match codebook manifold " +
                                    cb.manifold().to_string());
  }
}

void require_encoded_with(std::span<const SymbolSequence> seqs, const Codebook& cb) {
  for (const auto& s : seqs) {
    if (s.codebook_id != cb.id()) {
      throw IncompatibleArtifactError("sequence '" + s.id + "' was encoded with codebook " +
                                      s.codebook_id + ", not " + cb.id());
    }
    validate_symbols(s, cb.size());
  }
}

const SymbolSequence& pick(const std::vector<SymbolSequence>& seqs, const std::string& id,
                           const std::string& what) {
  if (seqs.empty()) throw ValidationError(what + " holds no sequences");
  if (id.empty()) return seqs.front();
  for (const auto& s : seqs) {
    if (s.id == id) return s;
  }
  throw ValidationError(what + " has no sequence '" + id + "'");
}

json neighbors_json(const std::vector<Neighbor>& nn) {
  json arr = json::array();
  for (const auto& n : nn) {
    arr.push_back({{"id", n.id},
                   {"distance", n.distance},
                   {"label", n.label ? json(*n.label) : json(nullptr)}});
  }
  return arr;
}

// ---- options per command

struct GenArgs {
  std::string manifold, scenario, out;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  std::string in, method, out;
  std::size_t k = 0;
  std::size_t stage1_k = 0;
  int r = 0;
  double alpha = 0.05, win_update = 1e-4, conscience = 10.0;
  int passes = 50;
  int max_iters = 100;
  std::uint64_t seed = 0;
};

struct EncodeArgs {
  std::string in, codebook, out, text;
  int window = 1;
};

struct MatchArgs {
  std::string a, b, codebook, a_id, b_id;
  bool dtw = false;
};

struct KnnArgs {
  std::string query, db, codebook, query_id;
  std::size_t k = 1;
};

struct ClassifyArgs {
  std::string db, test, codebook;
  bool loo = false;
};

struct DiscoverArgs {
  std::string in, codebook, radius, id, out;
  std::size_t len = 1, trivial = 1, top = 1;
  bool dtw = false;
};

struct EntropyArgs {
  std::string dataset, codebook;
};

struct BenchArgs {
  std::string suite, out;
  int reps = 20;
  std::uint64_t seed = 1;
  std::size_t knn_db = 10;
};

// ---- commands

int run_gen(const GenArgs& a) {
  const DatasetFile d = gen_synthetic(Manifold::parse(a.manifold), parse_scenario(a.scenario), a.seed);
  save_dataset(a.out, d);
  std::size_t frames = 0;
  for (const auto& s : d.sequences) frames += s.points.size();
  print({{"sequences", d.sequences.size()}, {"frames", frames}, {"segments", d.segments.size()},
         {"out", a.out}});
  return 0;
}

int run_train(const TrainArgs& a, const CLI::App& cmd) {
  const DatasetFile d = load_dataset(a.in);
  const std::vector<Point> frames = all_points(d);
  if (frames.empty()) throw ValidationError("dataset has no frames");

  ConscienceConfig cc;
  cc.k = a.k;
  cc.alpha = a.alpha;
  cc.win_update = a.win_update;
  cc.conscience = a.conscience;
  cc.max_passes = a.passes;
  cc.seed = a.seed;

  std::optional<Codebook> cb;
  if (a.method == "kmeans") {
    cb.emplace(kmeans_geodesic(frames, a.k, a.max_iters, a.seed));
  } else if (a.method == "conscience") {
    cb.emplace(conscience_learn(frames, cc));
  } else {
    if (cmd.count("--stage1-k") == 0 || cmd.count("--r") == 0) {
      throw ValidationError("hybrid training needs --stage1-k and --r");
    }
    cb.emplace(hybrid_learn(frames, a.stage1_k, a.r, cc));
  }
  save_codebook(a.out, *cb);
  print({{"codebook", cb->id()}, {"k", cb->size()}, {"method", cb->meta().method},
         {"frames", frames.size()}, {"out", a.out}});
  return 0;
}

int run_encode(const EncodeArgs& a) {
  const DatasetFile d = load_dataset(a.in);
  const Codebook cb = load_codebook(a.codebook);
  require_codebook_match(d.manifold, cb);
  std::vector<SymbolSequence> out;
  for (const auto& s : d.sequences) out.push_back(encode(s, cb, a.window));
  save_symbols(a.out, out);
  if (!a.text.empty()) write_text(a.text, symbols_to_text(out, cb));
  std::size_t symbols = 0;
  for (const auto& s : out) symbols += s.symbols.size();
  print({{"sequences", out.size()}, {"symbols", symbols}, {"out", a.out}});
  return 0;
}

int run_match(const MatchArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const auto as = load_symbols(a.a);
  const auto bs = load_symbols(a.b);
  const SymbolSequence& p = pick(as, a.a_id, a.a);
  const SymbolSequence& q = pick(bs, a.b_id, a.b);
  require_encoded_with(std::span(&p, 1), cb);
  require_encoded_with(std::span(&q, 1), cb);
  double d = 0.0;
  if (a.dtw) {
    d = dtw_symbolic(p, q, cb, {std::nullopt, false}).distance;
  } else {
    if (p.symbols.size() != q.symbols.size()) {
      throw ValidationError("sequences differ in length (" + std::to_string(p.symbols.size()) +
                            " vs " + std::to_string(q.symbols.size()) + "); use --dtw");
    }
    d = symbol_distance(p, q, cb);
  }
  print({{"a", p.id}, {"b", q.id}, {"mode", a.dtw ? "dtw" : "rigid"}, {"distance", d}});
  return 0;
}

int run_knn(const KnnArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const auto qs = load_symbols(a.query);
  const SymbolSequence& q = pick(qs, a.query_id, a.query);
  const auto entries = load_symbols(a.db);
  require_encoded_with(std::span(&q, 1), cb);
  require_encoded_with(entries, cb);
  SequenceDatabase db(cb.id());
  for (const auto& e : entries) db.add(e);
  if (a.k > db.size()) throw ValidationError("--k exceeds the database size");
  print({{"query", q.id}, {"neighbors", neighbors_json(knn(q, db, cb, a.k, {std::nullopt, false}))}});
  return 0;
}

int run_classify(const ClassifyArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const auto entries = load_symbols(a.db);
  require_encoded_with(entries, cb);
  SequenceDatabase db(cb.id());
  for (const auto& e : entries) db.add(e);

  if (a.loo) {
    const LooResult r = leave_one_out_symbolic(db, cb);
    json preds = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      preds.push_back({{"id", entries[i].id}, {"truth", entries[i].label.value_or("")},
                       {"predicted", r.predicted[i]}});
    }
    print({{"mode", "leave-one-out"}, {"accuracy", r.accuracy}, {"predictions", preds}});
    return 0;
  }

  if (a.test.empty()) throw ValidationError("classify needs --test unless --loo is given");
  const auto tests = load_symbols(a.test);
  require_encoded_with(tests, cb);
  json preds = json::array();
  std::size_t labeled = 0;
  std::size_t correct = 0;
  for (const auto& t : tests) {
    const std::string label = nn_classify(t, db, cb);
    preds.push_back({{"id", t.id}, {"truth", t.label ? json(*t.label) : json(nullptr)},
                     {"predicted", label}});
    if (t.label) {
      ++labeled;
      if (*t.label == label) ++correct;
    }
  }
  json out = {{"mode", "test"}, {"predictions", preds}};
  out["accuracy"] = labeled ? json(static_cast<double>(correct) / labeled) : json(nullptr);
  print(out);
  return 0;
}

int run_discover(const DiscoverArgs& a) {
  const Codebook cb = load_codebook(a.codebook);
  const auto seqs = load_symbols(a.in);
  const SymbolSequence& t = pick(seqs, a.id, a.in);
  require_encoded_with(std::span(&t, 1), cb);

  MotifQuery q;
  q.length = a.len;
  q.trivial_radius = a.trivial;
  q.top_k = a.top;
  q.use_dtw = a.dtw;
  if (a.radius == "auto") {
    q.radius = auto_radius(t.symbols, a.len, a.trivial, cb.lut());
  } else {
    try {
      std::size_t used = 0;
      q.radius = std::stod(a.radius, &used);
      if (used != a.radius.size()) throw std::invalid_argument(a.radius);
    } catch (const std::exception&) {
      throw ValidationError("--radius must be a number or 'auto'");
    }
    if (!(q.radius > 0.0) || !std::isfinite(q.radius)) {
      throw ValidationError("--radius must be positive");
    }
  }
  MotifReport report{t.id, cb.id(), q, find_motifs(t, q, cb)};
  if (!a.out.empty()) save_motifs(a.out, report);
  print(motifs_to_json(report));
  return 0;
}

int run_entropy(const EntropyArgs& a) {
  const DatasetFile d = load_dataset(a.dataset);
  const Codebook cb = load_codebook(a.codebook);
  require_codebook_match(d.manifold, cb);
  std::vector<Symbol> labels;
  for (const auto& s : d.sequences) {
    for (const auto& p : s.points) labels.push_back(assign(p, cb));
  }
  std::vector<std::size_t> hist(cb.size(), 0);
  for (Symbol s : labels) ++hist[s];
  print({{"frames", labels.size()},
         {"k", cb.size()},
         {"entropy_bits", entropy(labels, cb.size())},
         {"max_entropy_bits", std::log2(static_cast<double>(cb.size()))},
         {"histogram", hist}});
  return 0;
}

int run_bench_cmd(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.suite = a.suite;
  cfg.repetitions = a.reps;
  cfg.seed = a.seed;
  cfg.knn_db = a.knn_db;
  const json report = run_bench(cfg);
  save_report(a.out, report);
  print({{"suite", a.suite}, {"out", a.out}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic approximation of manifold-valued time series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "msax 0.1.0");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  c_gen->add_option("--manifold", gen.manifold, "euclidean:N | sphere:B | grassmann:M:D | se3:J")
      ->required();
  c_gen->add_option("--scenario", gen.scenario, "clusters:... | classes:... | concat:...")
      ->required();
  c_gen->add_option("--seed", gen.seed)->required();
  c_gen->add_option("--out", gen.out)->required();

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Learn a codebook from a dataset");
  c_train->add_option("--in", train.in)->required();
  c_train->add_option("--method", train.method)
      ->required()
      ->check(CLI::IsMember({"kmeans", "conscience", "hybrid"}));
  c_train->add_option("--k", train.k)->required()->check(CLI::PositiveNumber);
  c_train->add_option("--stage1-k", train.stage1_k)->check(CLI::PositiveNumber);
  c_train->add_option("--r", train.r)->check(CLI::PositiveNumber);
  c_train->add_option("--alpha", train.alpha, "initial learning rate")->capture_default_str();
  c_train->add_option("--B", train.win_update, "win-rate update rate")->capture_default_str();
  c_train->add_option("--C", train.conscience, "conscience factor")->capture_default_str();
  c_train->add_option("--passes", train.passes)->capture_default_str();
  c_train->add_option("--max-iters", train.max_iters, "k-means iterations")->capture_default_str();
  c_train->add_option("--seed", train.seed)->required();
  c_train->add_option("--out", train.out)->required();

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Encode every sequence of a dataset");
  c_enc->add_option("--in", enc.in)->required();
  c_enc->add_option("--codebook", enc.codebook)->required();
  c_enc->add_option("--window", enc.window)->required()->check(CLI::PositiveNumber);
  c_enc->add_option("--out", enc.out)->required();
  c_enc->add_option("--text", enc.text, "also write id/label/string lines here");

  MatchArgs match;
  auto* c_match = app.add_subcommand("match", "Distance between two encoded sequences");
  c_match->add_option("--a", match.a)->required();
  c_match->add_option("--b", match.b)->required();
  c_match->add_option("--codebook", match.codebook)->required();
  c_match->add_flag("--dtw", match.dtw);
  c_match->add_option("--a-id", match.a_id, "sequence id within --a (default: first)");
  c_match->add_option("--b-id", match.b_id, "sequence id within --b (default: first)");

  KnnArgs kn;
  auto* c_knn = app.add_subcommand("knn", "k nearest neighbors under symbolic DTW");
  c_knn->add_option("--query", kn.query)->required();
  c_knn->add_option("--db", kn.db)->required();
  c_knn->add_option("--codebook", kn.codebook)->required();
  c_knn->add_option("--k", kn.k)->required()->check(CLI::PositiveNumber);
  c_knn->add_option("--query-id", kn.query_id, "sequence id within --query (default: first)");

  ClassifyArgs cls;
  auto* c_cls = app.add_subcommand("classify", "1-NN classification under symbolic DTW");
  c_cls->add_option("--db", cls.db)->required();
  c_cls->add_option("--test", cls.test);
  c_cls->add_option("--codebook", cls.codebook)->required();
  c_cls->add_flag("--loo", cls.loo, "leave-one-out over --db");

  DiscoverArgs disc;
  auto* c_disc = app.add_subcommand("discover", "Find motifs in an encoded sequence");
  c_disc->add_option("--in", disc.in)->required();
  c_disc->add_option("--codebook", disc.codebook)->required();
  c_disc->add_option("--len", disc.len)->required()->check(CLI::PositiveNumber);
  c_disc->add_option("--radius", disc.radius, "float or 'auto'")->required();
  c_disc->add_option("--trivial", disc.trivial)->required()->check(CLI::PositiveNumber);
  c_disc->add_option("--top", disc.top)->required()->check(CLI::PositiveNumber);
  c_disc->add_option("--id", disc.id, "sequence id within --in (default: first)");
  c_disc->add_option("--out", disc.out, "also save the motifs artifact");
  c_disc->add_flag("--dtw", disc.dtw);

  EntropyArgs ent;
  auto* c_ent = app.add_subcommand("entropy", "Symbol-label entropy of a dataset");
  c_ent->add_option("--labels-from", ent.dataset)->required();
  c_ent->add_option("--codebook", ent.codebook)->required();

  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Run a benchmark suite");
  c_bench->add_option("--suite", bench.suite)
      ->required()
      ->check(CLI::IsMember({"speed", "tradeoff", "bits", "entropy"}));
  c_bench->add_option("--out", bench.out)->required();
  c_bench->add_option("--reps", bench.reps)->capture_default_str();
  c_bench->add_option("--seed", bench.seed)->capture_default_str();
  c_bench->add_option("--knn-db", bench.knn_db)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*c_gen) return run_gen(gen);
    if (*c_train) return run_train(train, *c_train);
    if (*c_enc) return run_encode(enc);
    if (*c_match) return run_match(match);
    if (*c_knn) return run_knn(kn);
    if (*c_cls) return run_classify(cls);
    if (*c_disc) return run_discover(disc);
    if (*c_ent) return run_entropy(ent);
    if (*c_bench) return run_bench_cmd(bench);
  } catch (const msax::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return msax::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
