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

#include "bigrec/rating_data.hpp"

#include <algorithm>
#include <string>

#include "bigrec/errors.hpp"

namespace bigrec {
namespace {

auto lower_bound_id(const std::vector<RatingEntry>& list, std::uint32_t id) {
  return std::lower_bound(list.begin(), list.end(), id,
                          [](const RatingEntry& entry, std::uint32_t key) { return entry.id < key; });
}

}  // namespace

RatingDataModel::RatingDataModel(std::size_t num_users, std::size_t num_items,
                                 std::span<const Edge> ratings, RatingScale scale)
    : by_user_(num_users), by_item_(num_items), num_ratings_(ratings.size()), scale_(scale) {
  for (const Edge& edge : ratings) {
    if (edge.user >= num_users || edge.item >= num_items) {
      throw ValidationError("ratings", "rating for unknown user " + std::to_string(edge.user) +
                                           " or item " + std::to_string(edge.item));
    }
    const auto value = static_cast<float>(edge.rating);
    by_user_[edge.user].push_back(RatingEntry{edge.item, value});
    by_item_[edge.item].push_back(RatingEntry{edge.user, value});
  }
  auto by_id = [](const RatingEntry& a, const RatingEntry& b) { return a.id < b.id; };
  for (auto& list : by_user_) {
    std::sort(list.begin(), list.end(), by_id);
    const auto dup = std::adjacent_find(list.begin(), list.end(),
                                        [](const RatingEntry& a, const RatingEntry& b) {
                                          return a.id == b.id;
                                        });
    if (dup != list.end()) {
      throw ValidationError("ratings", "duplicate rating for item " + std::to_string(dup->id));
    }
  }
  for (auto& list : by_item_) std::sort(list.begin(), list.end(), by_id);
}

RatingDataModel RatingDataModel::from_graph(const Bigraph& graph) {
  RatingScale scale;
  if (graph.params() && !graph.params()->rating_values.empty()) {
    const auto& values = graph.params()->rating_values;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    scale = RatingScale{static_cast<double>(*lo), static_cast<double>(*hi)};
  }
  return RatingDataModel(graph.num_users(), graph.num_items(), graph.edges(), scale);
}

std::optional<float> RatingDataModel::rating(std::uint32_t user, std::uint32_t item) const {
  if (user >= by_user_.size()) return std::nullopt;
  const auto& list = by_user_[user];
  const auto it = lower_bound_id(list, item);
  if (it == list.end() || it->id != item) return std::nullopt;
  return it->value;
}

bool RatingDataModel::add_rating(const Edge& rating) {
  if (rating.user >= by_user_.size()) by_user_.resize(rating.user + std::size_t{1});
  if (rating.item >= by_item_.size()) by_item_.resize(rating.item + std::size_t{1});
  auto& user_list = by_user_[rating.user];
  const auto at_user = lower_bound_id(user_list, rating.item);
  if (at_user != user_list.end() && at_user->id == rating.item) return false;
  const auto value = static_cast<float>(rating.rating);
  user_list.insert(at_user, RatingEntry{rating.item, value});
  auto& item_list = by_item_[rating.item];
  item_list.insert(lower_bound_id(item_list, rating.user), RatingEntry{rating.user, value});
  ++num_ratings_;
  return true;
}

std::size_t RatingDataModel::footprint_bytes() const {
  return kBaseBytes + (by_user_.size() + by_item_.size()) * kListBytes +
         2 * num_ratings_ * kEntryBytes;
}

}  // namespace bigrec
