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

#ifndef BIGREC_RECOMMENDER_HPP_
#define BIGREC_RECOMMENDER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bigrec/rating_data.hpp"
#include "bigrec/similarity.hpp"

namespace bigrec {

enum class Algorithm : std::uint8_t {
  kUserBased,
  kItemBased,
  kSlopeOne,
  kUserThreshold,
  kKnnItem,
  kSvd,
};

inline constexpr std::array<Algorithm, 6> kAllAlgorithms = {
    Algorithm::kUserBased,     Algorithm::kItemBased, Algorithm::kSlopeOne,
    Algorithm::kUserThreshold, Algorithm::kKnnItem,   Algorithm::kSvd};

std::string_view to_string(Algorithm algorithm);      // "userbased", ...
std::string_view display_name(Algorithm algorithm);   // "UserBased", ...
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct RecommenderConfig {
  Algorithm algorithm = Algorithm::kUserBased;
  SimilarityKind similarity = SimilarityKind::kPearson;
  std::uint32_t neighborhood_size = 200;
  std::optional<double> threshold;  // required by UserThreshold
  std::uint32_t knn_k = 20;
  std::uint32_t factors = 10;
  std::uint32_t training_iterations = 200;
  double learning_rate = 0.01;
  double regularization = 0.02;
  std::uint32_t top_n = 10;
  std::uint64_t seed = 1;

  // Throws ValidationError naming the offending field.
  void validate() const;

  friend bool operator==(const RecommenderConfig&, const RecommenderConfig&) = default;
};

// Short stable label: the display name plus any non-default knob that
// distinguishes configs of the same algorithm, e.g. "UserBased[spearman]".
std::string config_label(const RecommenderConfig& config);

struct RecommendedItem {
  std::uint32_t item = 0;
  double estimate = 0.0;

  friend bool operator==(const RecommendedItem&, const RecommendedItem&) = default;
};

// Descending by estimate, ties by ascending item id.
struct Recommendation {
  std::vector<RecommendedItem> items;
  bool unknown_user = false;
};

struct UpdateResult {
  std::size_t accepted = 0;
  std::size_t rejected = 0;  // pairs that were already rated
};

// Common contract of the six collaborative-filtering models.
//
// estimate() and recommend() are const and touch no mutable state, so a
// built model may serve any number of concurrent readers. update() needs
// exclusive access.
//
// Candidate items for recommend() are the items rated by users who share at
// least one item with the target user, minus the user's own items. The
// user-neighbourhood models instead take the items rated by the selected
// neighbourhood; items outside it have no estimate there anyway.
//
// All defined estimates are clamped to the data model's rating scale.
class Recommender {
 public:
  // Fixed per-model overhead in the footprint accounting.
  static constexpr std::size_t kModelBaseBytes = 64;

  explicit Recommender(RecommenderConfig config, RatingDataModel data)
      : config_(std::move(config)), data_(std::move(data)) {}
  virtual ~Recommender() = default;

  Recommender(const Recommender&) = delete;
  Recommender& operator=(const Recommender&) = delete;

  Algorithm algorithm() const { return config_.algorithm; }
  const RecommenderConfig& config() const { return config_; }
  const RatingDataModel& data() const { return data_; }

  // std::nullopt when the user or item is unknown or there is no evidence.
  virtual std::optional<double> estimate(std::uint32_t user, std::uint32_t item) const = 0;

  virtual Recommendation recommend(std::uint32_t user, std::size_t top_n) const;

  UpdateResult update(std::span<const Edge> new_ratings);

  // Deterministic retained-size accounting; see each model for its terms.
  virtual std::size_t footprint_bytes() const;

 protected:
  // Called before a new (non-duplicate) rating enters the data model.
  virtual void before_insert(const Edge& /*rating*/) {}
  // Called once per update() with the accepted ratings, in input order.
  virtual void after_update(std::span<const Edge> /*accepted*/) {}

  std::vector<std::uint32_t> second_neighbor_items(std::uint32_t user) const;

  RecommenderConfig config_;
  RatingDataModel data_;
};

// Keeps the `top_n` best entries in the documented order.
void select_top(std::vector<RecommendedItem>& items, std::size_t top_n);

// Trains the configured model. Throws ValidationError for a bad config or
// empty data.
std::unique_ptr<Recommender> build(const RecommenderConfig& config, RatingDataModel data);

// Pluggable user-user similarity for the user-neighbourhood models. A null
// function selects the configured SimilarityKind.
using UserSimilarityFn =
    std::function<std::optional<double>(SparseRatings, SparseRatings, std::size_t universe)>;

std::unique_ptr<Recommender> build_user_based(const RecommenderConfig& config,
                                              RatingDataModel data,
                                              UserSimilarityFn similarity);

}  // namespace bigrec

#endif  // BIGREC_RECOMMENDER_HPP_
