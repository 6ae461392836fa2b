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

#include "msax/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "msax/error.hpp"
#include "msax/stats.hpp"
#include "msax/synthetic.hpp"
#include "oracles.hpp"

namespace msax {
namespace {

Point unit(int b, int axis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(b);
  v(axis) = 1.0;
  return {Manifold::hypersphere(b), v};
}

std::vector<Point> random_points(const Manifold& m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(m, rng));
  return out;
}

std::vector<Point> cap(const Point& c, std::size_t n, double radius, std::mt19937_64& rng) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(exp_map(c, random_tangent(c, radius, rng)));
  return out;
}

TEST(Lut, SingleSymbol) {
  const std::vector<Point> one{unit(3, 0)};
  EXPECT_EQ(build_lut(one), Eigen::MatrixXd::Zero(1, 1));
}

TEST(Lut, OrthogonalAxes) {
  const std::vector<Point> axes{unit(3, 0), unit(3, 1), unit(3, 2)};
  const Eigen::MatrixXd lut = build_lut(axes);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(lut(i, j), i == j ? 0.0 : std::numbers::pi / 2, 1e-15);
}

TEST(Lut, MatchesFreshDistances) {
  const auto symbols = random_points(Manifold::grassmann(6, 2), 5, 1);
  const Codebook cb(Manifold::grassmann(6, 2), symbols);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(cb.lut()(i, i), 0.0);
    for (int j = 0; j < 5; ++j) {
      EXPECT_EQ(cb.lut()(i, j), cb.lut()(j, i));
      EXPECT_NEAR(cb.lut()(i, j), distance(symbols[i], symbols[j]), 1e-10);
    }
  }
}

TEST(CodebookType, RejectsBadSymbols) {
  EXPECT_THROW(Codebook(Manifold::hypersphere(3), {unit(3, 0)}), InvalidArgumentError);
  Point bad = unit(3, 1);
  bad.data *= 2.0;
  EXPECT_THROW(Codebook(Manifold::hypersphere(3), {unit(3, 0), bad}), ValidationError);
  EXPECT_THROW(Codebook(Manifold::hypersphere(3), {unit(3, 0), unit(4, 1)}),
               IncompatibleManifoldsError);
}

TEST(CodebookType, IdIsContentHash) {
  const auto a = random_points(Manifold::hypersphere(4), 6, 2);
  auto b = a;
  b[3] = random_point(Manifold::hypersphere(4), 99);
  const Codebook ca(Manifold::hypersphere(4), a);
  EXPECT_EQ(ca.id(), Codebook(Manifold::hypersphere(4), a).id());
  EXPECT_NE(ca.id(), Codebook(Manifold::hypersphere(4), b).id());
  EXPECT_EQ(ca.id().size(), 16u);
}

TEST(CodebookType, Alphabet) {
  const Codebook small(Manifold::hypersphere(4), random_points(Manifold::hypersphere(4), 62, 3));
  EXPECT_EQ(small.token(0), "a");
  EXPECT_EQ(small.token(26), "A");
  EXPECT_EQ(small.token(61), "9");
  const std::vector<Symbol> word{1, 2, 2, 3, 4, 0};
  EXPECT_EQ(small.render(word), "bccdea");
  EXPECT_EQ(small.parse("bccdea"), word);
  EXPECT_THROW(small.parse("b?"), InvalidArgumentError);

  const Codebook big(Manifold::hypersphere(4), random_points(Manifold::hypersphere(4), 70, 4));
  const std::vector<Symbol> w2{0, 69, 12};
  EXPECT_EQ(big.render(w2), "0,69,12");
  EXPECT_EQ(big.parse("0,69,12"), w2);
  EXPECT_THROW(big.parse("0,70"), InvalidArgumentError);
}

TEST(Assign, ExactSymbolAndTies) {
  const auto symbols = random_points(Manifold::hypersphere(5), 6, 5);
  const Codebook cb(Manifold::hypersphere(5), symbols);
  EXPECT_EQ(assign(symbols[3], cb), 3u);

  // Symbols 1 and 4 mirror each other across the plane x0 = 0, so e1 lies at
  // equal distance from both.
  const Manifold s3 = Manifold::hypersphere(3);
  const Point p1{s3, Eigen::Vector3d(0.6, 0.8, 0.0)};
  const Point p4{s3, Eigen::Vector3d(-0.6, 0.8, 0.0)};
  const std::vector<Point> tied{unit(3, 2), p1, {s3, -Eigen::Vector3d(0, 0, 1)},
                                {s3, Eigen::Vector3d(0, -1, 0)}, p4};
  const Codebook tcb(s3, tied);
  EXPECT_EQ(distance(unit(3, 1), p1), distance(unit(3, 1), p4));
  EXPECT_EQ(assign(unit(3, 1), tcb), 1u);
}

TEST(Assign, AgreesWithExhaustiveScan) {
  const Manifold m = Manifold::hypersphere(8);
  const auto symbols = random_points(m, 12, 6);
  const Codebook cb(m, symbols);
  for (const auto& p : random_points(m, 1000, 7)) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < symbols.size(); ++j)
      if (oracle::sphere_distance(p.data, symbols[j].data) <
          oracle::sphere_distance(p.data, symbols[best].data))
        best = j;
    EXPECT_EQ(assign(p, cb), best);
  }
  EXPECT_THROW(assign(unit(3, 0), cb), IncompatibleManifoldsError);
}

TEST(Entropy, Examples) {
  std::vector<Symbol> uniform;
  for (Symbol s = 0; s < 10; ++s) uniform.insert(uniform.end(), 7, s);
  EXPECT_NEAR(entropy(uniform, 10), std::log2(10.0), 1e-12);
  EXPECT_EQ(entropy(std::vector<Symbol>(9, 4), 10), 0.0);
  EXPECT_NEAR(entropy(std::vector<Symbol>{0, 1, 0, 1}, 10), 1.0, 1e-15);
  EXPECT_THROW(entropy(std::vector<Symbol>{10}, 10), InvalidArgumentError);
  EXPECT_THROW(entropy(std::vector<Symbol>{}, 10), InvalidArgumentError);
}

TEST(KMeans, DistinctPointsAreTheirOwnCenters) {
  const Manifold m = Manifold::hypersphere(4);
  const auto data = random_points(m, 6, 8);
  const KMeansResult r = kmeans_cluster(data, 6, {100, 1, std::nullopt});
  EXPECT_NEAR(r.objective.back(), 0.0, 1e-20);
  std::set<Symbol> used(r.labels.begin(), r.labels.end());
  EXPECT_EQ(used.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    EXPECT_LT(distance(data[i], r.centers[r.labels[i]]), 1e-12);
}

TEST(KMeans, TwoCapsOnTheSphere) {
  std::mt19937_64 rng(9);
  auto a = cap(unit(3, 0), 100, 0.15, rng);
  auto b = cap(unit(3, 1), 100, 0.15, rng);
  std::vector<Point> data = a;
  data.insert(data.end(), b.begin(), b.end());
  const Codebook cb = kmeans_geodesic(data, 2, 100, 3);
  const Point ma = karcher_mean(a).mean;
  const Point mb = karcher_mean(b).mean;
  const double ra = std::min(distance(cb.symbol(0), ma), distance(cb.symbol(1), ma));
  const double rb = std::min(distance(cb.symbol(0), mb), distance(cb.symbol(1), mb));
  EXPECT_LT(ra, 0.1);
  EXPECT_LT(rb, 0.1);
}

TEST(KMeans, ObjectiveNonIncreasing) {
  for (const char* s : {"sphere:5", "grassmann:5:2", "se3:2"}) {
    const auto data = random_points(Manifold::parse(s), 300, 10);
    const KMeansResult r = kmeans_cluster(data, 8, {100, 4, std::nullopt});
    for (std::size_t i = 1; i < r.objective.size(); ++i)
      EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-9) << s;
  }
}

TEST(KMeans, ReseedsEmptyClusters) {
  const auto data = random_points(Manifold::hypersphere(3), 50, 11);
  const std::vector<Point> init{data[0], data[0], data[0]};
  const KMeansResult r = kmeans_cluster(data, 3, {100, 0, init});
  for (std::size_t s : r.sizes) EXPECT_GT(s, 0u);
}

TEST(KMeans, Errors) {
  const auto data = random_points(Manifold::hypersphere(3), 3, 12);
  EXPECT_THROW(kmeans_geodesic(data, 4, 10, 0), InvalidArgumentError);
}

TEST(Conscience, TwoSymbolsOnUniformSphere) {
  const auto data = random_points(Manifold::hypersphere(3), 1000, 13);
  ConscienceConfig cfg;
  cfg.k = 2;
  cfg.seed = 5;
  const Codebook cb = conscience_learn(data, cfg);
  std::size_t zero = 0;
  for (const auto& p : data) zero += assign(p, cb) == 0 ? 1 : 0;
  const double rate = zero / 1000.0;
  EXPECT_GE(rate, 0.45);
  EXPECT_LE(rate, 0.55);
}

TEST(Conscience, WinRatesStayNormalized) {
  const auto data = random_points(Manifold::hypersphere(5), 500, 14);
  ConscienceConfig cfg;
  cfg.k = 7;
  cfg.max_passes = 5;
  ConscienceTrace trace;
  conscience_symbols(data, cfg, std::nullopt, &trace);
  EXPECT_LT(trace.max_win_rate_drift, 1e-9);
  double sum = 0.0;
  for (double p : trace.win_rates) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(trace.entropy_per_pass.size(), 5u);
}

TEST(Conscience, ZeroConscienceIsPlainCompetitiveLearning) {
  const auto data = random_points(Manifold::hypersphere(4), 300, 15);
  ConscienceConfig cfg;
  cfg.k = 5;
  cfg.conscience = 0.0;
  cfg.max_passes = 3;
  cfg.rule = WinRateRule::kBiasedWinner;
  const auto biased = conscience_symbols(data, cfg);
  cfg.rule = WinRateRule::kUnbiasedWinner;
  const auto plain = conscience_symbols(data, cfg);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(biased[i].data, plain[i].data);
}

TEST(Conscience, BitReproducible) {
  const auto data = random_points(Manifold::product_se3(2), 200, 16);
  ConscienceConfig cfg;
  cfg.k = 4;
  cfg.max_passes = 3;
  cfg.seed = 77;
  const Codebook a = conscience_learn(data, cfg);
  const Codebook b = conscience_learn(data, cfg);
  EXPECT_EQ(a.id(), b.id());
}

TEST(Conscience, SymbolsStayOnTheManifold) {
  for (const char* s : {"sphere:6", "grassmann:6:2", "se3:3"}) {
    const auto data = random_points(Manifold::parse(s), 200, 17);
    ConscienceConfig cfg;
    cfg.k = 5;
    cfg.max_passes = 4;
    for (const auto& sym : conscience_symbols(data, cfg)) {
      EXPECT_FALSE(validate_point(sym).has_value()) << s;
    }
  }
}

TEST(Conscience, EuclideanUpdateIsVectorSpaceRule) {
  const Manifold m = Manifold::euclidean(3);
  const auto data = random_points(m, 200, 18);
  std::vector<Point> init(data.begin(), data.begin() + 4);
  ConscienceConfig cfg;
  cfg.k = 4;
  cfg.max_passes = 6;
  cfg.shuffle = false;
  cfg.scale_conscience_by_data = false;
  cfg.conscience = 0.5;
  cfg.win_update = 0.01;
  const auto got = conscience_symbols(data, cfg, init);

  std::vector<Eigen::VectorXd> xs;
  for (const auto& p : data) xs.push_back(p.data);
  std::vector<Eigen::VectorXd> s0;
  for (const auto& p : init) s0.push_back(p.data);
  const auto want = oracle::conscience(xs, s0, cfg.alpha, cfg.alpha_final, cfg.win_update,
                                       cfg.conscience, cfg.max_passes);
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_LT((got[i].data - want[i]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Conscience, Errors) {
  const auto data = random_points(Manifold::hypersphere(3), 5, 19);
  ConscienceConfig cfg;
  cfg.k = 6;
  EXPECT_THROW(conscience_learn(data, cfg), InvalidArgumentError);
  cfg.k = 2;
  cfg.win_update = 1.0;
  EXPECT_THROW(conscience_learn(data, cfg), InvalidArgumentError);
}

TEST(Conscience, MoreEquiprobableThanKMeans) {
  ClustersScenario sc;
  sc.skew = {0.8, 0.15, 0.05};
  sc.spread = 0.5;
  sc.points = 3000;
  const auto data = gen_synthetic(Manifold::hypersphere(8), sc, 20).sequences[0].points;
  ConscienceConfig cfg;
  cfg.k = 10;
  cfg.seed = 3;
  ConscienceTrace trace;
  conscience_symbols(data, cfg, std::nullopt, &trace);
  const KMeansResult km = kmeans_cluster(data, 10, {100, 3, std::nullopt});
  EXPECT_GT(trace.entropy_per_pass.back(), entropy(km.labels, 10));
}

TEST(Hybrid, SubclusterCounts) {
  const std::vector<std::size_t> sizes{50, 30, 20};
  EXPECT_EQ(subcluster_counts(sizes, 1), (std::vector<std::size_t>{3, 2, 1}));
  const std::vector<std::size_t> equal{40, 40, 40};
  EXPECT_EQ(subcluster_counts(equal, 1), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(subcluster_counts(sizes, 3), (std::vector<std::size_t>{8, 5, 3}));
  const std::vector<std::size_t> empty{5, 0};
  EXPECT_THROW(subcluster_counts(empty, 1), DegenerateError);
}

TEST(Hybrid, EquiprobableStageOneKeepsCenters) {
  std::mt19937_64 rng(21);
  std::vector<Point> data;
  for (int axis = 0; axis < 3; ++axis) {
    auto c = cap(unit(3, axis), 60, 0.1, rng);
    data.insert(data.end(), c.begin(), c.end());
  }
  ConscienceConfig cfg;
  cfg.seed = 2;
  HybridTrace trace;
  const Codebook cb = hybrid_learn(data, 3, 1, cfg, &trace);
  EXPECT_EQ(cb.size(), 3u);
  EXPECT_EQ(trace.subcluster_counts, (std::vector<std::size_t>{1, 1, 1}));
  const KMeansResult km = kmeans_cluster(data, 3, {100, 2, std::nullopt});
  for (std::size_t c = 0; c < 3; ++c) EXPECT_LT(distance(cb.symbol(c), km.centers[c]), 0.1);
}

TEST(Hybrid, SizeFollowsStageOneProbabilities) {
  ClustersScenario sc;
  sc.skew = {0.8, 0.15, 0.05};
  sc.points = 3000;
  const auto data = gen_synthetic(Manifold::hypersphere(8), sc, 22).sequences[0].points;
  ConscienceConfig cfg;
  cfg.seed = 4;
  cfg.max_passes = 10;
  HybridTrace trace;
  const Codebook cb = hybrid_learn(data, 5, 3, cfg, &trace);
  const double smallest =
      static_cast<double>(*std::min_element(trace.stage1_sizes.begin(), trace.stage1_sizes.end()));
  std::size_t total = 0;
  for (std::size_t c = 0; c < trace.stage1_sizes.size(); ++c) {
    const auto want = static_cast<std::size_t>(std::ceil(3.0 * trace.stage1_sizes[c] / smallest - 1e-12));
    EXPECT_EQ(trace.subcluster_counts[c], want);
    total += want;
  }
  EXPECT_EQ(cb.size(), total);
  RecordProperty("final_k", static_cast<int>(cb.size()));
}

}  // namespace
}  // namespace msax
