// Copyright 2026 The bigrec Authors
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

#include <doctest.h>

#include <cmath>
#include <random>

#include "bigrec/errors.hpp"
#include "bigrec/generator.hpp"
#include "bigrec/models.hpp"
#include "bigrec/recommender.hpp"
#include "oracles.hpp"

namespace bigrec {
namespace {

using oracle::Matrix;

RecommenderConfig config_for(Algorithm algorithm,
                             SimilarityKind similarity = SimilarityKind::kPearson) {
  RecommenderConfig config;
  config.algorithm = algorithm;
  config.similarity = similarity;
  if (algorithm == Algorithm::kUserThreshold) config.threshold = 0.3;
  return config;
}

RatingDataModel model_of(const Matrix& m) {
  const auto edges = oracle::matrix_edges(m);
  return RatingDataModel(m.size(), m[0].size(), edges);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t users, std::size_t items) {
  std::bernoulli_distribution present(std::uniform_real_distribution<double>(0.2, 0.9)(rng));
  Matrix m(users, oracle::Dense(items));
  for (auto& row : m) {
    for (auto& cell : row) {
      if (present(rng)) cell = static_cast<int>(rng() % 6);
    }
  }
  if (oracle::matrix_edges(m).empty()) m[0][0] = 3;
  return m;
}

// The slope-one worked example: users A, B rate items i, j; C rates only j.
Matrix slope_one_fixture() {
  return Matrix{{5, 3}, {4, 2}, {std::nullopt, 4}};
}

TEST_CASE("slope one worked example") {
  const auto model = build(config_for(Algorithm::kSlopeOne), model_of(slope_one_fixture()));
  const auto& slope = dynamic_cast<const SlopeOneRecommender&>(*model);
  CHECK(slope.average_diff(0, 1) == 2.0);
  CHECK(slope.average_diff(1, 0) == -2.0);
  CHECK(slope.co_count(0, 1) == 2);
  CHECK(model->estimate(2, 0) == 5.0);  // 4 + 2, clamped
  const Recommendation r = model->recommend(2, 1);
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0] == RecommendedItem{0, 5.0});
}

TEST_CASE("slope one updates match a rebuild") {
  Matrix m = slope_one_fixture();
  auto model = build(config_for(Algorithm::kSlopeOne), model_of(m));
  const std::vector<Edge> d = {{3, 0, 2}, {3, 1, 2}};
  model->update(d);
  m.push_back({2, 2});
  const auto rebuilt = build(config_for(Algorithm::kSlopeOne), model_of(m));
  const auto& a = dynamic_cast<const SlopeOneRecommender&>(*model);
  const auto& b = dynamic_cast<const SlopeOneRecommender&>(*rebuilt);
  CHECK(a.average_diff(0, 1) == b.average_diff(0, 1));
  CHECK(*a.average_diff(0, 1) == doctest::Approx(4.0 / 3.0));
  CHECK(a.co_count(0, 1) == 3);
  CHECK(a.estimate(2, 0) == b.estimate(2, 0));

  // Random batches, including new users and items.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix grown = random_matrix(rng, 2 + rng() % 5, 2 + rng() % 5);
    Matrix start = grown;
    std::vector<Edge> batch;
    for (std::uint32_t u = 0; u < grown.size(); ++u) {
      for (std::uint32_t i = 0; i < grown[u].size(); ++i) {
        if (grown[u][i] && rng() % 3 == 0) {
          batch.push_back({u, i, *grown[u][i]});
          start[u][i].reset();
        }
      }
    }
    if (oracle::matrix_edges(start).empty()) continue;
    auto incremental = build(config_for(Algorithm::kSlopeOne), model_of(start));
    std::shuffle(batch.begin(), batch.end(), rng);
    const UpdateResult result = incremental->update(batch);
    CHECK(result.accepted == batch.size());
    const auto fresh = build(config_for(Algorithm::kSlopeOne), model_of(grown));
    const auto& x = dynamic_cast<const SlopeOneRecommender&>(*incremental);
    const auto& y = dynamic_cast<const SlopeOneRecommender&>(*fresh);
    CHECK(x.stored_pairs() == y.stored_pairs());
    CHECK(x.footprint_bytes() == y.footprint_bytes());
    for (std::uint32_t i = 0; i < grown[0].size(); ++i) {
      for (std::uint32_t j = 0; j < grown[0].size(); ++j) {
        CHECK(x.co_count(i, j) == y.co_count(i, j));
        const auto dx = x.average_diff(i, j);
        const auto dy = y.average_diff(i, j);
        REQUIRE(dx.has_value() == dy.has_value());
        if (dx) CHECK(std::abs(*dx - *dy) <= 1e-12);
      }
    }
  }
}

TEST_CASE("slope one update touches only pairs with the updated users' items") {
  GeneratorParams p;
  p.T = 300;
  const Bigraph g = generate(p);
  auto model = build(config_for(Algorithm::kSlopeOne), RatingDataModel::from_graph(g));
  auto& slope = dynamic_cast<SlopeOneRecommender&>(*model);
  const std::uint64_t before = slope.pair_updates();
  const auto batch = std::span(g.holdout_edges()).first(100);
  // Each new rating pairs once with every rating its user already holds.
  std::uint64_t expected = 0;
  RatingDataModel replay = RatingDataModel::from_graph(g);
  for (const Edge& e : batch) {
    expected += e.user < replay.num_users() ? replay.user_ratings(e.user).size() : 0;
    replay.add_rating(e);
  }
  model->update(batch);
  CHECK(slope.pair_updates() - before == expected);
}

TEST_CASE("user based with one perfect neighbour") {
  // Users 0 and 1 agree exactly on items 0 and 1; user 1 also rated item 2.
  const Matrix m = {{4, 2, std::nullopt}, {4, 2, 3}};
  const auto model = build(config_for(Algorithm::kUserBased, SimilarityKind::kEuclidean),
                           model_of(m));
  CHECK(model->estimate(0, 2) == 3.0);
}

TEST_CASE("empty recommendations") {
  const Matrix full = {{1, 2}, {3, 4}};
  for (const Algorithm algorithm : kAllAlgorithms) {
    const auto model = build(config_for(algorithm), model_of(full));
    CHECK(model->recommend(0, 10).items.empty());
    const Recommendation unknown = model->recommend(7, 10);
    CHECK(unknown.unknown_user);
    CHECK(unknown.items.empty());
    CHECK_FALSE(model->estimate(7, 0).has_value());
  }
  const Matrix apart = {{5, std::nullopt}, {std::nullopt, 4}};
  const auto user_based = build(config_for(Algorithm::kUserBased), model_of(apart));
  CHECK(user_based->recommend(0, 10).items.empty());

  GeneratorParams p;
  p.T = 200;
  const auto model =
      build(config_for(Algorithm::kItemBased), RatingDataModel::from_graph(generate(p)));
  const Recommendation none = model->recommend(0, 0);
  CHECK(none.items.empty());
  CHECK_FALSE(none.unknown_user);
}

TEST_CASE("building needs ratings and valid settings") {
  const RatingDataModel empty(3, 3, std::vector<Edge>{});
  CHECK_THROWS_AS(build(config_for(Algorithm::kSvd), empty), ValidationError);

  RecommenderConfig config = config_for(Algorithm::kUserThreshold);
  config.threshold.reset();
  try {
    config.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "threshold");
  }
  config = RecommenderConfig{};
  config.factors = 0;
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config = RecommenderConfig{};
  CHECK(config.neighborhood_size == 200);
  CHECK(config.factors == 10);
  CHECK(config.training_iterations == 200);
  CHECK(config.similarity == SimilarityKind::kPearson);
}

TEST_CASE("names and labels") {
  for (const Algorithm algorithm : kAllAlgorithms) {
    CHECK(parse_algorithm(to_string(algorithm)) == algorithm);
  }
  CHECK_FALSE(parse_algorithm("random").has_value());
  CHECK(config_label(config_for(Algorithm::kSvd)) == "SVD");
  RecommenderConfig config = config_for(Algorithm::kUserBased, SimilarityKind::kSpearman);
  config.neighborhood_size = 50;
  CHECK(config_label(config) == "UserBased[spearman,n=50]");
  CHECK(config_label(config_for(Algorithm::kUserThreshold)) == "UserThreshold[t=0.3]");
}

void check_against_oracle(const RecommenderConfig& config, const Matrix& m) {
  const auto model = build(config, model_of(m));
  for (std::uint32_t u = 0; u < m.size(); ++u) {
    for (const std::size_t top_n : {std::size_t{1}, std::size_t{3}, m[0].size()}) {
      const auto expected = oracle::recommend(config, m, u, top_n);
      const Recommendation actual = model->recommend(u, top_n);
      REQUIRE(actual.items == expected);
    }
  }
}

TEST_CASE("property: every algorithm matches the brute-force oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const Matrix m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
    for (const Algorithm algorithm : kAllAlgorithms) {
      if (algorithm == Algorithm::kSlopeOne || algorithm == Algorithm::kSvd) {
        RecommenderConfig config = config_for(algorithm);
        config.seed = rng();
        config.training_iterations = 1 + rng() % 60;
        config.factors = 1 + rng() % 4;
        CAPTURE(config_label(config));
        check_against_oracle(config, m);
        continue;
      }
      for (const SimilarityKind kind : kAllSimilarityKinds) {
        RecommenderConfig config = config_for(algorithm, kind);
        config.neighborhood_size = 1 + rng() % 4;
        config.knn_k = 1 + rng() % 4;
        config.threshold = (rng() % 10) / 10.0;
        CAPTURE(config_label(config));
        check_against_oracle(config, m);
      }
    }
  }
}

TEST_CASE("property: knn with k covering every item is item based") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = random_matrix(rng, 2 + rng() % 6, 2 + rng() % 6);
    for (const SimilarityKind kind : kAllSimilarityKinds) {
      RecommenderConfig knn = config_for(Algorithm::kKnnItem, kind);
      knn.knn_k = static_cast<std::uint32_t>(m[0].size());
      const auto a = build(knn, model_of(m));
      const auto b = build(config_for(Algorithm::kItemBased, kind), model_of(m));
      for (std::uint32_t u = 0; u < m.size(); ++u) {
        CHECK(a->recommend(u, 10).items == b->recommend(u, 10).items);
      }
    }
  }
}

TEST_CASE("property: estimates stay inside the rating range") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix m = random_matrix(rng, 2 + rng() % 7, 2 + rng() % 7);
    for (const Algorithm algorithm : kAllAlgorithms) {
      const auto model = build(config_for(algorithm, SimilarityKind::kEuclidean), model_of(m));
      for (std::uint32_t u = 0; u < m.size(); ++u) {
        for (std::uint32_t i = 0; i < m[0].size(); ++i) {
          if (const auto e = model->estimate(u, i)) {
            CHECK(*e >= 0.0);
            CHECK(*e <= 5.0);
            CHECK(std::isfinite(*e));
          }
        }
      }
    }
  }
}

TEST_CASE("property: scaling user similarities keeps the ranking") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = random_matrix(rng, 3 + rng() % 6, 2 + rng() % 6);
    const double factor = 0.5 + (rng() % 100) / 10.0;
    RecommenderConfig config = config_for(Algorithm::kUserBased);
    config.neighborhood_size = 1 + rng() % 5;
    auto base = build_user_based(config, model_of(m), [](auto x, auto y, std::size_t n) {
      return similarity(SimilarityKind::kEuclidean, x, y, n);
    });
    auto scaled = build_user_based(config, model_of(m), [factor](auto x, auto y, std::size_t n) {
      const auto s = similarity(SimilarityKind::kEuclidean, x, y, n);
      return s ? std::optional<double>(*s * factor) : s;
    });
    for (std::uint32_t u = 0; u < m.size(); ++u) {
      std::vector<std::uint32_t> a, b;
      for (const auto& item : base->recommend(u, 10).items) a.push_back(item.item);
      for (const auto& item : scaled->recommend(u, 10).items) b.push_back(item.item);
      CHECK(a == b);
    }
  }
}

TEST_CASE("user threshold keeps exactly the users at or above the cut-off") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(rng, 6, 5);
    RecommenderConfig config = config_for(Algorithm::kUserThreshold, SimilarityKind::kTanimoto);
    config.threshold = 0.4;
    const auto model = build(config, model_of(m));
    const auto& users = dynamic_cast<const UserNeighborhoodRecommender&>(*model);
    const RatingDataModel data = model_of(m);
    for (std::uint32_t u = 0; u < 6; ++u) {
      std::vector<std::uint32_t> expected;
      for (std::uint32_t w = 0; w < 6; ++w) {
        const auto s = similarity(SimilarityKind::kTanimoto, data.user_ratings(u),
                                  data.user_ratings(w), 5);
        if (w != u && s && *s >= 0.4) expected.push_back(w);
      }
      std::vector<std::uint32_t> actual;
      for (const auto& n : users.neighborhood(u)) actual.push_back(n.user);
      CHECK(actual == expected);
    }
  }
}

TEST_CASE("a new user becomes a neighbour right after the update") {
  // User 0 has no overlap with user 1; the new user 2 agrees with user 0 on
  // item 0 and rated item 2.
  const Matrix m = {{3, 4, std::nullopt}, {std::nullopt, std::nullopt, 5}};
  auto model = build(config_for(Algorithm::kUserBased, SimilarityKind::kEuclidean), model_of(m));
  CHECK_FALSE(model->estimate(0, 2).has_value());
  const std::vector<Edge> batch = {{2, 0, 3}, {2, 2, 1}};
  model->update(batch);
  CHECK(model->estimate(0, 2) == 1.0);
}

TEST_CASE("updates: no-ops, duplicates and footprint growth") {
  GeneratorParams p;
  p.T = 400;
  const Bigraph g = generate(p);
  for (const Algorithm algorithm : kAllAlgorithms) {
    CAPTURE(to_string(algorithm));
    auto model = build(config_for(algorithm), RatingDataModel::from_graph(g));
    std::vector<std::optional<double>> before;
    for (std::uint32_t u = 0; u < 20; ++u) before.push_back(model->estimate(u, u + 1));
    const std::size_t bytes = model->footprint_bytes();

    const UpdateResult nothing = model->update({});
    CHECK(nothing.accepted == 0);
    for (std::uint32_t u = 0; u < 20; ++u) CHECK(model->estimate(u, u + 1) == before[u]);
    CHECK(model->footprint_bytes() == bytes);

    const std::vector<Edge> repeat = {g.edges()[0]};
    const UpdateResult rejected = model->update(repeat);
    CHECK(rejected.rejected == 1);
    CHECK(rejected.accepted == 0);

    const UpdateResult applied = model->update(g.holdout_edges());
    CHECK(applied.accepted == g.holdout_edges().size());
    CHECK(model->footprint_bytes() >= bytes);
    CHECK(model->data().num_ratings() == g.num_edges() + g.holdout_edges().size());
  }
}

TEST_CASE("footprint accounting") {
  const Matrix singles = {{3, std::nullopt}, {std::nullopt, 4}};
  const auto slope = build(config_for(Algorithm::kSlopeOne), model_of(singles));
  const std::size_t data_bytes = model_of(singles).footprint_bytes();
  CHECK(slope->footprint_bytes() == data_bytes + Recommender::kModelBaseBytes);

  const auto example = build(config_for(Algorithm::kSlopeOne), model_of(slope_one_fixture()));
  CHECK(example->footprint_bytes() == model_of(slope_one_fixture()).footprint_bytes() + 64 +
                                          SlopeOneRecommender::kDiffRowBytes +
                                          SlopeOneRecommender::kDiffEntryBytes);

  GeneratorParams p;
  p.T = 300;
  const Bigraph g = generate(p);
  const RatingDataModel data = RatingDataModel::from_graph(g);
  RecommenderConfig config = config_for(Algorithm::kSvd);
  config.factors = 7;
  const auto svd = build(config, data);
  CHECK(svd->footprint_bytes() == data.footprint_bytes() + 64 + SvdRecommender::kStateBytes +
                                      (g.num_users() + g.num_items()) * 7 * sizeof(double));
  for (const Algorithm algorithm : kAllAlgorithms) {
    CHECK(build(config_for(algorithm), data)->footprint_bytes() ==
          build(config_for(algorithm), data)->footprint_bytes());
  }
}

TEST_CASE("svd training") {
  GeneratorParams p;
  p.T = 300;
  const Bigraph g = generate(p);
  const RatingDataModel data = RatingDataModel::from_graph(g);
  RecommenderConfig config = config_for(Algorithm::kSvd);
  const auto model = build(config, data);
  const auto& svd = dynamic_cast<const SvdRecommender&>(*model);
  CHECK(svd.final_rmse() < svd.initial_rmse());
  CHECK(svd.rating_visits() == std::uint64_t{200} * g.num_edges());
  CHECK(svd.training_rmse() == svd.final_rmse());
}

TEST_CASE("property: svd factors match a plain replay") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
    RecommenderConfig config = config_for(Algorithm::kSvd);
    config.seed = rng();
    config.factors = 1 + rng() % 5;
    config.training_iterations = 1 + rng() % 100;
    const auto model = build(config, model_of(m));
    const auto& svd = dynamic_cast<const SvdRecommender&>(*model);
    const oracle::SvdReplay replay = oracle::replay_svd(config, m);
    CHECK(svd.global_mean() == replay.global_mean);
    for (std::uint32_t u = 0; u < m.size(); ++u) {
      const auto row = svd.user_factors(u);
      CHECK(std::vector<double>(row.begin(), row.end()) == replay.user_factors[u]);
    }
    for (std::uint32_t i = 0; i < m[0].size(); ++i) {
      const auto row = svd.item_factors(i);
      CHECK(std::vector<double>(row.begin(), row.end()) == replay.item_factors[i]);
    }
  }
}

TEST_CASE("svd folds in unseen users") {
  const Matrix m = {{5, 1, 4}, {4, 2, 5}};
  auto model = build(config_for(Algorithm::kSvd), model_of(m));
  const auto& svd = dynamic_cast<const SvdRecommender&>(*model);
  CHECK_FALSE(model->estimate(2, 0).has_value());
  const std::vector<Edge> batch = {{2, 0, 5}, {2, 3, 1}};
  model->update(batch);
  CHECK(svd.user_rows() == 3);
  CHECK(svd.item_rows() == 4);
  CHECK(model->estimate(2, 1).has_value());
  CHECK(model->estimate(0, 3).has_value());
}

}  // namespace
}  // namespace bigrec
