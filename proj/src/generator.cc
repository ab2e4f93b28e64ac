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

#include "bigrec/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace bigrec {

GrowthProcess::GrowthProcess(GeneratorParams params)
    : params_(std::move(params)), rng_(params_.seed) {
  params_.validate();
  users_.reserve(params_.m + params_.T + params_.holdout_steps);
  items_.reserve(params_.m + params_.T + params_.holdout_steps);
  for (std::uint32_t k = 0; k < params_.m; ++k) {
    const std::uint32_t user = add_node(Side::kUser);
    const std::uint32_t item = add_node(Side::kItem);
    connect(user, item, draw_rating(), false);
  }
}

GrowthProcess::GrowthProcess(GeneratorParams params, const Bigraph& graph)
    : params_(std::move(params)), rng_(params_.seed) {
  params_.validate();
  for (std::size_t k = 0; k < graph.num_users(); ++k) add_node(Side::kUser);
  for (std::size_t k = 0; k < graph.num_items(); ++k) add_node(Side::kItem);
  for (const Edge& edge : graph.edges()) connect(edge.user, edge.item, edge.rating, false);
  for (const Edge& edge : graph.holdout_edges()) connect(edge.user, edge.item, edge.rating, true);
}

std::uint32_t GrowthProcess::add_node(Side side) {
  AdjacencyList& adj = adjacency(side);
  adj.emplace_back();
  return static_cast<std::uint32_t>(adj.size() - 1);
}

void GrowthProcess::connect(std::uint32_t user, std::uint32_t item, int rating, bool holdout) {
  users_[user].push_back(item);
  items_[item].push_back(user);
  user_endpoints_.push_back(user);
  item_endpoints_.push_back(item);
  (holdout ? holdout_ : edges_).push_back(Edge{user, item, rating});
}

int GrowthProcess::draw_rating() {
  return params_.rating_values[rng_.index(params_.rating_values.size())];
}

bool GrowthProcess::joined(Side side, std::uint32_t node, std::uint32_t target) const {
  const auto& mine = adjacency(side)[node];
  return std::find(mine.begin(), mine.end(), target) != mine.end();
}

std::uint32_t GrowthProcess::preferential_draw(Side side) {
  const auto& pool = endpoints(side);
  return pool[rng_.index(pool.size())];
}

std::uint32_t GrowthProcess::draw_unused_target(Side side, std::uint32_t node) {
  const Side other = opposite(side);
  std::vector<std::uint32_t> unused;
  const auto count = static_cast<std::uint32_t>(num_nodes(other));
  for (std::uint32_t candidate = 0; candidate < count; ++candidate) {
    if (!joined(side, node, candidate)) unused.push_back(candidate);
  }
  if (unused.empty()) {
    throw std::logic_error("node is already joined to every node of the opposite side");
  }
  return unused[rng_.index(unused.size())];
}

std::uint32_t GrowthProcess::draw_uniform_target(Side side, std::uint32_t node) {
  const std::size_t count = num_nodes(opposite(side));
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const auto candidate = static_cast<std::uint32_t>(rng_.index(count));
    if (!joined(side, node, candidate)) return candidate;
  }
  return draw_unused_target(side, node);
}

std::uint32_t GrowthProcess::draw_preferential_target(Side side, std::uint32_t node) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint32_t candidate = preferential_draw(opposite(side));
    if (!joined(side, node, candidate)) return candidate;
  }
  return draw_unused_target(side, node);
}

BounceResult GrowthProcess::bounce(Side side, std::uint32_t node) {
  const Side other = opposite(side);
  const auto& joined_nodes = adjacency(side)[node];
  if (!joined_nodes.empty()) {
    // Micro-step 1: a node already joined with the new node.
    const std::uint32_t first = joined_nodes[rng_.index(joined_nodes.size())];
    // Micro-step 2: a neighbour of it other than the new node.
    std::vector<std::uint32_t> candidates;
    for (const std::uint32_t w : adjacency(other)[first]) {
      if (w != node) candidates.push_back(w);
    }
    if (!candidates.empty()) {
      const std::uint32_t second = candidates[rng_.index(candidates.size())];
      // Micro-step 3: a neighbour of that node not yet joined with the new node.
      candidates.clear();
      for (const std::uint32_t x : adjacency(side)[second]) {
        if (!joined(side, node, x)) candidates.push_back(x);
      }
      if (!candidates.empty()) {
        return BounceResult{candidates[rng_.index(candidates.size())], false};
      }
    }
  }
  return BounceResult{draw_preferential_target(side, node), true};
}

void GrowthProcess::step(bool holdout) {
  IterationTrace record;
  record.holdout = holdout;
  const Side side = rng_.bernoulli(params_.p) ? Side::kUser : Side::kItem;
  record.added = side;
  record.requested = side == Side::kUser ? params_.u : params_.v;
  const double preferential_share = side == Side::kUser ? params_.alpha : params_.beta;

  const std::size_t available = num_nodes(opposite(side));
  const auto attach =
      static_cast<std::uint32_t>(std::min<std::size_t>(record.requested, available));
  record.shortfall = record.requested - attach;

  const std::uint32_t node = add_node(side);
  for (std::uint32_t k = 0; k < attach; ++k) {
    std::uint32_t target = 0;
    if (rng_.bernoulli(preferential_share)) {
      if (rng_.bernoulli(params_.b)) {
        ++record.bounce_attempts;
        const BounceResult bounced = bounce(side, node);
        target = bounced.node;
        if (bounced.fell_back) {
          ++record.bounce_fallbacks;
          ++record.preferential;
        } else {
          ++record.bounced;
        }
      } else {
        target = draw_preferential_target(side, node);
        ++record.preferential;
      }
    } else {
      target = draw_uniform_target(side, node);
      ++record.random;
    }
    const int rating = draw_rating();
    if (side == Side::kUser) {
      connect(node, target, rating, holdout);
    } else {
      connect(target, node, rating, holdout);
    }
  }
  trace_.push_back(record);
}

Bigraph GrowthProcess::snapshot() const {
  return Bigraph(users_.size(), items_.size(), edges_, holdout_, params_);
}

Bigraph initialize(const GeneratorParams& params) { return GrowthProcess(params).snapshot(); }

Bigraph generate(const GeneratorParams& params, GrowthTrace* trace) {
  GrowthProcess process(params);
  for (std::uint32_t t = 0; t < params.T; ++t) process.step(false);
  for (std::uint32_t t = 0; t < params.holdout_steps; ++t) process.step(true);
  if (trace != nullptr) *trace = process.trace();
  return process.snapshot();
}

}  // namespace bigrec
