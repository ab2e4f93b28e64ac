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

#include <cmath>

#include "bigrec/models.hpp"

namespace bigrec {

SvdRecommender::SvdRecommender(RecommenderConfig config, RatingDataModel data)
    : Recommender(std::move(config), std::move(data)), rng_(config_.seed) {
  grow_rows();

  double sum = 0.0;
  const auto users = static_cast<std::uint32_t>(data_.num_users());
  for (std::uint32_t user = 0; user < users; ++user) {
    for (const RatingEntry& entry : data_.user_ratings(user)) sum += entry.value;
  }
  global_mean_ = sum / static_cast<double>(data_.num_ratings());

  initial_rmse_ = training_rmse();
  for (std::uint32_t epoch = 0; epoch < config_.training_iterations; ++epoch) {
    for (std::uint32_t user = 0; user < users; ++user) {
      for (const RatingEntry& entry : data_.user_ratings(user)) {
        sgd_step(user, entry.id, entry.value);
        ++rating_visits_;
      }
    }
  }
  final_rmse_ = training_rmse();
}

void SvdRecommender::grow_rows() {
  const std::size_t factors = config_.factors;
  while (user_rows() < data_.num_users()) {
    for (std::size_t f = 0; f < factors; ++f) {
      user_factors_.push_back(rng_.uniform(-kInitRange, kInitRange));
    }
  }
  while (item_rows() < data_.num_items()) {
    for (std::size_t f = 0; f < factors; ++f) {
      item_factors_.push_back(rng_.uniform(-kInitRange, kInitRange));
    }
  }
}

std::span<const double> SvdRecommender::user_factors(std::uint32_t user) const {
  return std::span<const double>(user_factors_).subspan(std::size_t{user} * config_.factors,
                                                        config_.factors);
}

std::span<const double> SvdRecommender::item_factors(std::uint32_t item) const {
  return std::span<const double>(item_factors_).subspan(std::size_t{item} * config_.factors,
                                                        config_.factors);
}

double SvdRecommender::predict(std::uint32_t user, std::uint32_t item) const {
  const double* p = user_factors_.data() + std::size_t{user} * config_.factors;
  const double* q = item_factors_.data() + std::size_t{item} * config_.factors;
  double dot = 0.0;
  for (std::size_t f = 0; f < config_.factors; ++f) dot += p[f] * q[f];
  return global_mean_ + dot;
}

void SvdRecommender::sgd_step(std::uint32_t user, std::uint32_t item, double rating) {
  const double error = rating - predict(user, item);
  double* p = user_factors_.data() + std::size_t{user} * config_.factors;
  double* q = item_factors_.data() + std::size_t{item} * config_.factors;
  const double lr = config_.learning_rate;
  const double reg = config_.regularization;
  for (std::size_t f = 0; f < config_.factors; ++f) {
    const double pu = p[f];
    const double qi = q[f];
    p[f] += lr * (error * qi - reg * pu);
    q[f] += lr * (error * pu - reg * qi);
  }
}

double SvdRecommender::training_rmse() const {
  double sum_sq = 0.0;
  const auto users = static_cast<std::uint32_t>(data_.num_users());
  for (std::uint32_t user = 0; user < users; ++user) {
    for (const RatingEntry& entry : data_.user_ratings(user)) {
      const double error = entry.value - predict(user, entry.id);
      sum_sq += error * error;
    }
  }
  return std::sqrt(sum_sq / static_cast<double>(data_.num_ratings()));
}

std::optional<double> SvdRecommender::estimate(std::uint32_t user, std::uint32_t item) const {
  if (user >= user_rows() || item >= item_rows()) return std::nullopt;
  return data_.scale().clamp(predict(user, item));
}

void SvdRecommender::after_update(std::span<const Edge> accepted) {
  grow_rows();
  for (int pass = 0; pass < kUpdatePasses; ++pass) {
    for (const Edge& rating : accepted) sgd_step(rating.user, rating.item, rating.rating);
  }
}

std::size_t SvdRecommender::footprint_bytes() const {
  return Recommender::footprint_bytes() + kStateBytes +
         (user_factors_.size() + item_factors_.size()) * sizeof(double);
}

}  // namespace bigrec
