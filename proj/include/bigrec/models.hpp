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

#ifndef BIGREC_MODELS_HPP_
#define BIGREC_MODELS_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bigrec/recommender.hpp"
#include "bigrec/rng.hpp"

namespace bigrec {

// UserBased and UserThreshold. Similarities are computed on demand against
// every other user at recommend time; nothing is cached.
//
// UserBased keeps the neighborhood_size users with the highest positive
// similarity (ties by ascending id); UserThreshold keeps every user with
// similarity >= threshold. The estimate is
//   sum s(u,w) r(w,i) / sum |s(u,w)|
// over neighbourhood members w that rated i, accumulated in ascending w.
class UserNeighborhoodRecommender final : public Recommender {
 public:
  struct Neighbor {
    std::uint32_t user = 0;
    double similarity = 0.0;
  };

  UserNeighborhoodRecommender(RecommenderConfig config, RatingDataModel data,
                              UserSimilarityFn similarity);

  // Ascending user id.
  std::vector<Neighbor> neighborhood(std::uint32_t user) const;

  std::optional<double> estimate(std::uint32_t user, std::uint32_t item) const override;
  Recommendation recommend(std::uint32_t user, std::size_t top_n) const override;

 private:
  std::optional<double> user_similarity(std::uint32_t a, std::uint32_t b) const;

  UserSimilarityFn similarity_;
};

// ItemBased and KnnItem. The estimate is
//   sum s(i,j) r(u,j) / sum |s(i,j)|
// over items j rated by u with a defined similarity to i, accumulated in
// ascending j. KnnItem first keeps only the knn_k most similar such j
// (ties by ascending id).
class ItemNeighborhoodRecommender final : public Recommender {
 public:
  using Recommender::Recommender;

  std::optional<double> estimate(std::uint32_t user, std::uint32_t item) const override;
};

// Weighted SlopeOne over precomputed per-pair average differences.
//
// Each unordered item pair (lo, hi) stores the sum of r(lo) - r(hi) over
// users who rated both, and their count. The estimate is
//   sum_j (r(u,j) + diff(i,j)) * count(i,j) / sum_j count(i,j)
// over items j rated by u, in ascending j.
//
// Footprint: data + kModelBaseBytes + kDiffRowBytes per item with at least
// one stored pair + kDiffEntryBytes per stored pair.
class SlopeOneRecommender final : public Recommender {
 public:
  static constexpr std::size_t kDiffRowBytes = 56;
  static constexpr std::size_t kDiffEntryBytes = 32;

  struct DiffStat {
    double sum = 0.0;
    std::uint32_t count = 0;
  };

  SlopeOneRecommender(RecommenderConfig config, RatingDataModel data);

  // Average of r(i) - r(j) over co-raters; nullopt when there are none.
  std::optional<double> average_diff(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t co_count(std::uint32_t i, std::uint32_t j) const;
  std::size_t stored_pairs() const { return stored_pairs_; }
  // Pair-table writes performed so far (build and updates).
  std::uint64_t pair_updates() const { return pair_updates_; }

  std::optional<double> estimate(std::uint32_t user, std::uint32_t item) const override;
  std::size_t footprint_bytes() const override;

 protected:
  void before_insert(const Edge& rating) override;

 private:
  const DiffStat* find(std::uint32_t lo, std::uint32_t hi) const;
  void accumulate(std::uint32_t a, float ra, std::uint32_t b, float rb);

  std::vector<std::unordered_map<std::uint32_t, DiffStat>> diffs_;
  std::size_t stored_pairs_ = 0;
  std::uint64_t pair_updates_ = 0;
};

// Latent-factor model trained by plain stochastic gradient descent.
//
// Factors start uniform in [-kInitRange, kInitRange], drawn from Rng(seed):
// all user rows first, then all item rows, each row in factor order. An
// epoch visits ratings user-major (ascending user, then item) and applies
//   e = r - (mu + p_u . q_i)
//   p_u += lr (e q_i - reg p_u),  q_i += lr (e p_u - reg q_i)
// factor by factor, where mu is the global mean rating. update() appends
// freshly initialized rows for unseen ids (users, then items, ascending)
// and runs kUpdatePasses passes over only the new ratings.
//
// Footprint: data + kModelBaseBytes + kStateBytes
//            + (user rows + item rows) * factors * sizeof(double).
class SvdRecommender final : public Recommender {
 public:
  static constexpr double kInitRange = 0.05;
  static constexpr int kUpdatePasses = 10;
  static constexpr std::size_t kStateBytes = 16;

  SvdRecommender(RecommenderConfig config, RatingDataModel data);

  double global_mean() const { return global_mean_; }
  double initial_rmse() const { return initial_rmse_; }
  double final_rmse() const { return final_rmse_; }
  // How many times each training rating was visited, summed.
  std::uint64_t rating_visits() const { return rating_visits_; }
  std::size_t user_rows() const { return user_factors_.size() / config_.factors; }
  std::size_t item_rows() const { return item_factors_.size() / config_.factors; }
  std::span<const double> user_factors(std::uint32_t user) const;
  std::span<const double> item_factors(std::uint32_t item) const;

  // Root mean squared error of the unclamped predictions on the training data.
  double training_rmse() const;

  std::optional<double> estimate(std::uint32_t user, std::uint32_t item) const override;
  std::size_t footprint_bytes() const override;

 protected:
  void after_update(std::span<const Edge> accepted) override;

 private:
  double predict(std::uint32_t user, std::uint32_t item) const;
  void sgd_step(std::uint32_t user, std::uint32_t item, double rating);
  void grow_rows();

  Rng rng_;
  std::vector<double> user_factors_;
  std::vector<double> item_factors_;
  double global_mean_ = 0.0;
  double initial_rmse_ = 0.0;
  double final_rmse_ = 0.0;
  std::uint64_t rating_visits_ = 0;
};

}  // namespace bigrec

#endif  // BIGREC_MODELS_HPP_
