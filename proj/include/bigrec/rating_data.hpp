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

#ifndef BIGREC_RATING_DATA_HPP_
#define BIGREC_RATING_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bigrec/bigraph.hpp"
#include "bigrec/similarity.hpp"

namespace bigrec {

struct RatingScale {
  double min = 0.0;
  double max = 5.0;

  double clamp(double value) const { return value < min ? min : (value > max ? max : value); }
};

// Sparse user x item rating store with a user-major and an item-major view.
// Both views hold RatingEntry lists sorted by id and are exact transposes.
//
// Size accounting (bytes), used by every model's footprint:
//   kBaseBytes                              fixed header
//   + (num_users + num_items) * kListBytes  one list header per row
//   + 2 * num_ratings * kEntryBytes         each rating lives in both views
class RatingDataModel {
 public:
  static constexpr std::size_t kBaseBytes = 64;
  static constexpr std::size_t kListBytes = 24;
  static constexpr std::size_t kEntryBytes = sizeof(RatingEntry);

  RatingDataModel() = default;

  // Throws ValidationError on a duplicate pair or an id out of range.
  RatingDataModel(std::size_t num_users, std::size_t num_items, std::span<const Edge> ratings,
                  RatingScale scale = {});

  // Training edges only; the scale spans the graph's rating_values when the
  // graph carries generator parameters.
  static RatingDataModel from_graph(const Bigraph& graph);

  std::size_t num_users() const { return by_user_.size(); }
  std::size_t num_items() const { return by_item_.size(); }
  std::size_t num_ratings() const { return num_ratings_; }
  const RatingScale& scale() const { return scale_; }

  SparseRatings user_ratings(std::uint32_t user) const { return by_user_[user]; }
  SparseRatings item_ratings(std::uint32_t item) const { return by_item_[item]; }

  std::optional<float> rating(std::uint32_t user, std::uint32_t item) const;

  // Inserts one rating, growing either view for unseen ids. Returns false
  // (and changes nothing) when the pair is already rated.
  bool add_rating(const Edge& rating);

  std::size_t footprint_bytes() const;

 private:
  std::vector<std::vector<RatingEntry>> by_user_;
  std::vector<std::vector<RatingEntry>> by_item_;
  std::size_t num_ratings_ = 0;
  RatingScale scale_;
};

}  // namespace bigrec

#endif  // BIGREC_RATING_DATA_HPP_
