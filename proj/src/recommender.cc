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

#include "bigrec/recommender.hpp"

#include <algorithm>
#include <cmath>

#include "bigrec/errors.hpp"
#include "bigrec/models.hpp"
#include "bigrec/params.hpp"

namespace bigrec {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kUserBased:
      return "userbased";
    case Algorithm::kItemBased:
      return "itembased";
    case Algorithm::kSlopeOne:
      return "slopeone";
    case Algorithm::kUserThreshold:
      return "userthreshold";
    case Algorithm::kKnnItem:
      return "knnitem";
    case Algorithm::kSvd:
      return "svd";
  }
  return "unknown";
}

std::string_view display_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kUserBased:
      return "UserBased";
    case Algorithm::kItemBased:
      return "ItemBased";
    case Algorithm::kSlopeOne:
      return "SlopeOne";
    case Algorithm::kUserThreshold:
      return "UserThreshold";
    case Algorithm::kKnnItem:
      return "KnnItem";
    case Algorithm::kSvd:
      return "SVD";
  }
  return "Unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const Algorithm algorithm : kAllAlgorithms) {
    if (to_string(algorithm) == name) return algorithm;
  }
  return std::nullopt;
}

void RecommenderConfig::validate() const {
  if (neighborhood_size < 1) throw ValidationError("neighborhood", "must be at least 1");
  if (knn_k < 1) throw ValidationError("knn-k", "must be at least 1");
  if (factors < 1) throw ValidationError("factors", "must be at least 1");
  if (training_iterations < 1) throw ValidationError("iterations", "must be at least 1");
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate", "must be positive");
  if (!(regularization >= 0.0)) throw ValidationError("regularization", "must be non-negative");
  if (algorithm == Algorithm::kUserThreshold && !threshold) {
    throw ValidationError("threshold", "required by userthreshold");
  }
  if (threshold && !(*threshold >= 0.0)) {
    throw ValidationError("threshold", "must be non-negative");
  }
}

std::string config_label(const RecommenderConfig& config) {
  static const RecommenderConfig defaults;
  std::vector<std::string> knobs;
  const Algorithm algo = config.algorithm;
  const bool uses_similarity = algo != Algorithm::kSlopeOne && algo != Algorithm::kSvd;
  if (uses_similarity && config.similarity != defaults.similarity) {
    knobs.emplace_back(to_string(config.similarity));
  }
  if (algo == Algorithm::kUserBased && config.neighborhood_size != defaults.neighborhood_size) {
    knobs.push_back("n=" + std::to_string(config.neighborhood_size));
  }
  if (algo == Algorithm::kUserThreshold && config.threshold) {
    knobs.push_back("t=" + format_real(*config.threshold));
  }
  if (algo == Algorithm::kKnnItem && config.knn_k != defaults.knn_k) {
    knobs.push_back("k=" + std::to_string(config.knn_k));
  }
  if (algo == Algorithm::kSvd) {
    if (config.factors != defaults.factors) knobs.push_back("f=" + std::to_string(config.factors));
    if (config.training_iterations != defaults.training_iterations) {
      knobs.push_back("it=" + std::to_string(config.training_iterations));
    }
  }
  std::string label(display_name(algo));
  if (!knobs.empty()) {
    label += '[';
    for (std::size_t k = 0; k < knobs.size(); ++k) {
      if (k > 0) label += ',';
      label += knobs[k];
    }
    label += ']';
  }
  return label;
}

void select_top(std::vector<RecommendedItem>& items, std::size_t top_n) {
  auto better = [](const RecommendedItem& a, const RecommendedItem& b) {
    if (a.estimate != b.estimate) return a.estimate > b.estimate;
    return a.item < b.item;
  };
  if (items.size() > top_n) {
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(top_n),
                      items.end(), better);
    items.resize(top_n);
  } else {
    std::sort(items.begin(), items.end(), better);
  }
}

std::vector<std::uint32_t> Recommender::second_neighbor_items(std::uint32_t user) const {
  const std::size_t num_items = data_.num_items();
  std::vector<char> mark(num_items, 0);
  for (const RatingEntry& own : data_.user_ratings(user)) mark[own.id] = 1;
  std::vector<char> seen_user(data_.num_users(), 0);
  seen_user[user] = 1;
  std::vector<std::uint32_t> candidates;
  for (const RatingEntry& own : data_.user_ratings(user)) {
    for (const RatingEntry& rater : data_.item_ratings(own.id)) {
      if (seen_user[rater.id]) continue;
      seen_user[rater.id] = 1;
      for (const RatingEntry& far : data_.user_ratings(rater.id)) {
        if (mark[far.id]) continue;
        mark[far.id] = 2;
        candidates.push_back(far.id);
      }
    }
  }
  return candidates;
}

Recommendation Recommender::recommend(std::uint32_t user, std::size_t top_n) const {
  Recommendation result;
  if (user >= data_.num_users()) {
    result.unknown_user = true;
    return result;
  }
  if (top_n == 0) return result;
  for (const std::uint32_t item : second_neighbor_items(user)) {
    if (const auto value = estimate(user, item)) {
      result.items.push_back(RecommendedItem{item, *value});
    }
  }
  select_top(result.items, top_n);
  return result;
}

UpdateResult Recommender::update(std::span<const Edge> new_ratings) {
  UpdateResult result;
  std::vector<Edge> accepted;
  accepted.reserve(new_ratings.size());
  for (const Edge& rating : new_ratings) {
    if (data_.rating(rating.user, rating.item)) {
      ++result.rejected;
      continue;
    }
    before_insert(rating);
    data_.add_rating(rating);
    accepted.push_back(rating);
  }
  result.accepted = accepted.size();
  if (!accepted.empty()) after_update(accepted);
  return result;
}

std::size_t Recommender::footprint_bytes() const {
  return data_.footprint_bytes() + kModelBaseBytes;
}

std::unique_ptr<Recommender> build_user_based(const RecommenderConfig& config,
                                              RatingDataModel data,
                                              UserSimilarityFn similarity) {
  config.validate();
  if (config.algorithm != Algorithm::kUserBased &&
      config.algorithm != Algorithm::kUserThreshold) {
    throw ValidationError("algo", "not a user-neighbourhood algorithm");
  }
  if (data.num_ratings() == 0) throw ValidationError("data", "no ratings to build from");
  return std::make_unique<UserNeighborhoodRecommender>(config, std::move(data),
                                                       std::move(similarity));
}

std::unique_ptr<Recommender> build(const RecommenderConfig& config, RatingDataModel data) {
  config.validate();
  if (data.num_ratings() == 0) throw ValidationError("data", "no ratings to build from");
  switch (config.algorithm) {
    case Algorithm::kUserBased:
    case Algorithm::kUserThreshold:
      return std::make_unique<UserNeighborhoodRecommender>(config, std::move(data), nullptr);
    case Algorithm::kItemBased:
    case Algorithm::kKnnItem:
      return std::make_unique<ItemNeighborhoodRecommender>(config, std::move(data));
    case Algorithm::kSlopeOne:
      return std::make_unique<SlopeOneRecommender>(config, std::move(data));
    case Algorithm::kSvd:
      return std::make_unique<SvdRecommender>(config, std::move(data));
  }
  throw ValidationError("algo", "unknown algorithm");
}

}  // namespace bigrec
