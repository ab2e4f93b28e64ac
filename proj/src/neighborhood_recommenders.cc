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

#include <algorithm>
#include <cmath>

#include "bigrec/models.hpp"

namespace bigrec {

UserNeighborhoodRecommender::UserNeighborhoodRecommender(RecommenderConfig config,
                                                         RatingDataModel data,
                                                         UserSimilarityFn similarity)
    : Recommender(std::move(config), std::move(data)), similarity_(std::move(similarity)) {}

std::optional<double> UserNeighborhoodRecommender::user_similarity(std::uint32_t a,
                                                                   std::uint32_t b) const {
  const SparseRatings x = data_.user_ratings(a);
  const SparseRatings y = data_.user_ratings(b);
  if (similarity_) return similarity_(x, y, data_.num_items());
  return similarity(config_.similarity, x, y, data_.num_items());
}

std::vector<UserNeighborhoodRecommender::Neighbor> UserNeighborhoodRecommender::neighborhood(
    std::uint32_t user) const {
  std::vector<Neighbor> members;
  if (user >= data_.num_users()) return members;
  const bool by_threshold = config_.algorithm == Algorithm::kUserThreshold;
  const double threshold = config_.threshold.value_or(0.0);
  const auto count = static_cast<std::uint32_t>(data_.num_users());
  for (std::uint32_t other = 0; other < count; ++other) {
    if (other == user) continue;
    const auto s = user_similarity(user, other);
    if (!s) continue;
    if (by_threshold ? *s >= threshold : *s > 0.0) members.push_back(Neighbor{other, *s});
  }
  if (!by_threshold && members.size() > config_.neighborhood_size) {
    auto closer = [](const Neighbor& a, const Neighbor& b) {
      if (a.similarity != b.similarity) return a.similarity > b.similarity;
      return a.user < b.user;
    };
    const auto cut = members.begin() + config_.neighborhood_size;
    std::nth_element(members.begin(), cut, members.end(), closer);
    members.erase(cut, members.end());
    std::sort(members.begin(), members.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.user < b.user; });
  }
  return members;
}

std::optional<double> UserNeighborhoodRecommender::estimate(std::uint32_t user,
                                                            std::uint32_t item) const {
  if (user >= data_.num_users() || item >= data_.num_items()) return std::nullopt;
  double numerator = 0.0;
  double denominator = 0.0;
  bool rated = false;
  for (const Neighbor& neighbor : neighborhood(user)) {
    const auto r = data_.rating(neighbor.user, item);
    if (!r) continue;
    rated = true;
    numerator += neighbor.similarity * static_cast<double>(*r);
    denominator += std::abs(neighbor.similarity);
  }
  if (!rated || denominator == 0.0) return std::nullopt;
  return data_.scale().clamp(numerator / denominator);
}

Recommendation UserNeighborhoodRecommender::recommend(std::uint32_t user,
                                                      std::size_t top_n) const {
  Recommendation result;
  if (user >= data_.num_users()) {
    result.unknown_user = true;
    return result;
  }
  if (top_n == 0) return result;
  const std::size_t num_items = data_.num_items();
  std::vector<double> numerator(num_items, 0.0);
  std::vector<double> denominator(num_items, 0.0);
  // 0 = untouched, 1 = rated by the user, 2 = candidate
  std::vector<char> state(num_items, 0);
  for (const RatingEntry& own : data_.user_ratings(user)) state[own.id] = 1;
  std::vector<std::uint32_t> candidates;
  for (const Neighbor& neighbor : neighborhood(user)) {
    for (const RatingEntry& entry : data_.user_ratings(neighbor.user)) {
      if (state[entry.id] == 1) continue;
      if (state[entry.id] == 0) {
        state[entry.id] = 2;
        candidates.push_back(entry.id);
      }
      numerator[entry.id] += neighbor.similarity * static_cast<double>(entry.value);
      denominator[entry.id] += std::abs(neighbor.similarity);
    }
  }
  for (const std::uint32_t item : candidates) {
    if (denominator[item] == 0.0) continue;
    result.items.push_back(
        RecommendedItem{item, data_.scale().clamp(numerator[item] / denominator[item])});
  }
  select_top(result.items, top_n);
  return result;
}

std::optional<double> ItemNeighborhoodRecommender::estimate(std::uint32_t user,
                                                            std::uint32_t item) const {
  if (user >= data_.num_users() || item >= data_.num_items()) return std::nullopt;
  struct Term {
    std::uint32_t item;
    double similarity;
    double rating;
  };
  std::vector<Term> terms;
  const SparseRatings target = data_.item_ratings(item);
  for (const RatingEntry& own : data_.user_ratings(user)) {
    if (own.id == item) continue;
    const auto s =
        similarity(config_.similarity, target, data_.item_ratings(own.id), data_.num_users());
    if (s) terms.push_back(Term{own.id, *s, static_cast<double>(own.value)});
  }
  if (config_.algorithm == Algorithm::kKnnItem && terms.size() > config_.knn_k) {
    const auto cut = terms.begin() + config_.knn_k;
    std::nth_element(terms.begin(), cut, terms.end(), [](const Term& a, const Term& b) {
      if (a.similarity != b.similarity) return a.similarity > b.similarity;
      return a.item < b.item;
    });
    terms.erase(cut, terms.end());
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.item < b.item; });
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (const Term& term : terms) {
    numerator += term.similarity * term.rating;
    denominator += std::abs(term.similarity);
  }
  if (denominator == 0.0) return std::nullopt;
  return data_.scale().clamp(numerator / denominator);
}

}  // namespace bigrec
