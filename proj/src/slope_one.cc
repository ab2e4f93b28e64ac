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

#include "bigrec/models.hpp"

namespace bigrec {

SlopeOneRecommender::SlopeOneRecommender(RecommenderConfig config, RatingDataModel data)
    : Recommender(std::move(config), std::move(data)) {
  diffs_.resize(data_.num_items());
  const auto users = static_cast<std::uint32_t>(data_.num_users());
  for (std::uint32_t user = 0; user < users; ++user) {
    const SparseRatings own = data_.user_ratings(user);
    for (std::size_t a = 0; a < own.size(); ++a) {
      for (std::size_t b = a + 1; b < own.size(); ++b) {
        accumulate(own[a].id, own[a].value, own[b].id, own[b].value);
      }
    }
  }
}

void SlopeOneRecommender::accumulate(std::uint32_t a, float ra, std::uint32_t b, float rb) {
  const std::uint32_t lo = std::min(a, b);
  const std::uint32_t hi = std::max(a, b);
  const double delta = a < b ? static_cast<double>(ra) - rb : static_cast<double>(rb) - ra;
  if (diffs_.size() <= lo) diffs_.resize(lo + std::size_t{1});
  auto [it, inserted] = diffs_[lo].try_emplace(hi);
  if (inserted) ++stored_pairs_;
  it->second.sum += delta;
  ++it->second.count;
  ++pair_updates_;
}

const SlopeOneRecommender::DiffStat* SlopeOneRecommender::find(std::uint32_t lo,
                                                               std::uint32_t hi) const {
  if (lo >= diffs_.size()) return nullptr;
  const auto it = diffs_[lo].find(hi);
  return it == diffs_[lo].end() ? nullptr : &it->second;
}

std::optional<double> SlopeOneRecommender::average_diff(std::uint32_t i, std::uint32_t j) const {
  const DiffStat* stat = find(std::min(i, j), std::max(i, j));
  if (stat == nullptr || stat->count == 0) return std::nullopt;
  const double mean = stat->sum / stat->count;
  return i < j ? mean : -mean;
}

std::uint32_t SlopeOneRecommender::co_count(std::uint32_t i, std::uint32_t j) const {
  const DiffStat* stat = find(std::min(i, j), std::max(i, j));
  return stat == nullptr ? 0 : stat->count;
}

std::optional<double> SlopeOneRecommender::estimate(std::uint32_t user, std::uint32_t item) const {
  if (user >= data_.num_users() || item >= data_.num_items()) return std::nullopt;
  double numerator = 0.0;
  double denominator = 0.0;
  for (const RatingEntry& own : data_.user_ratings(user)) {
    if (own.id == item) continue;
    const DiffStat* stat = find(std::min(item, own.id), std::max(item, own.id));
    if (stat == nullptr || stat->count == 0) continue;
    const double mean = stat->sum / stat->count;
    const double diff = item < own.id ? mean : -mean;
    numerator += (static_cast<double>(own.value) + diff) * stat->count;
    denominator += stat->count;
  }
  if (denominator == 0.0) return std::nullopt;
  return data_.scale().clamp(numerator / denominator);
}

void SlopeOneRecommender::before_insert(const Edge& rating) {
  if (rating.user >= data_.num_users()) return;  // a new user has nothing to pair with
  const auto value = static_cast<float>(rating.rating);
  for (const RatingEntry& own : data_.user_ratings(rating.user)) {
    accumulate(rating.item, value, own.id, own.value);
  }
}

std::size_t SlopeOneRecommender::footprint_bytes() const {
  std::size_t rows = 0;
  for (const auto& row : diffs_) {
    if (!row.empty()) ++rows;
  }
  return Recommender::footprint_bytes() + rows * kDiffRowBytes + stored_pairs_ * kDiffEntryBytes;
}

}  // namespace bigrec
