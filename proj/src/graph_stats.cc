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

#include "bigrec/graph_stats.hpp"

#include <omp.h>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace bigrec::stats {
namespace {

// Visited-set over node ids that resets in O(1) by bumping the stamp.
class StampSet {
 public:
  explicit StampSet(std::size_t size) : stamps_(size, 0) {}

  void clear() { ++current_; }
  bool insert(std::uint32_t id) {
    if (stamps_[id] == current_) return false;
    stamps_[id] = current_;
    return true;
  }
  bool contains(std::uint32_t id) const { return stamps_[id] == current_; }

 private:
  std::vector<std::uint32_t> stamps_;
  std::uint32_t current_ = 1;
};

Blcc blcc_with(const Bigraph& graph, Side side, std::uint32_t node, StampSet& seen) {
  const Side other = opposite(side);
  std::uint64_t potential = 0;
  std::uint64_t distinct = 0;
  seen.clear();
  seen.insert(node);
  for (const std::uint32_t first : graph.neighbors(side, node)) {
    const auto around = graph.neighbors(other, first);
    potential += around.size() - 1;
    for (const std::uint32_t second : around) {
      if (seen.insert(second)) ++distinct;
    }
  }
  if (potential == 0) return Blcc{0.0, false};
  return Blcc{1.0 - static_cast<double>(distinct) / static_cast<double>(potential), true};
}

}  // namespace

Blcc blcc(const Bigraph& graph, Side side, std::uint32_t node) {
  StampSet seen(graph.num_nodes(side));
  return blcc_with(graph, side, node, seen);
}

std::vector<Blcc> blcc_all(const Bigraph& graph, Side side) {
  const auto count = static_cast<std::int64_t>(graph.num_nodes(side));
  std::vector<Blcc> values(static_cast<std::size_t>(count));
#pragma omp parallel
  {
    StampSet seen(static_cast<std::size_t>(count));
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t node = 0; node < count; ++node) {
      values[static_cast<std::size_t>(node)] =
          blcc_with(graph, side, static_cast<std::uint32_t>(node), seen);
    }
  }
  return values;
}

double mean_blcc(const std::vector<Blcc>& values) {
  double sum = 0.0;
  std::size_t defined = 0;
  for (const Blcc& value : values) {
    if (!value.defined) continue;
    sum += value.value;
    ++defined;
  }
  return defined == 0 ? 0.0 : sum / static_cast<double>(defined);
}

std::uint64_t DegreeDistribution::node_count() const {
  std::uint64_t total = 0;
  for (const auto& [degree, count] : histogram) total += count;
  return total;
}

DegreeDistribution degree_distribution(const Bigraph& graph, Side side) {
  DegreeDistribution dist;
  dist.side = side;
  const auto count = static_cast<std::uint32_t>(graph.num_nodes(side));
  for (std::uint32_t node = 0; node < count; ++node) ++dist.histogram[graph.degree(side, node)];
  // Integer sums first; the moments are then one division each.
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (const auto& [degree, nodes] : dist.histogram) {
    sum += std::uint64_t{degree} * nodes;
    sum_sq += std::uint64_t{degree} * degree * nodes;
  }
  if (count > 0) {
    dist.first_moment = static_cast<double>(sum) / count;
    dist.second_moment = static_cast<double>(sum_sq) / count;
  }
  return dist;
}

double newman_second_neighbors(const DegreeDistribution& users, const DegreeDistribution& items) {
  if (!(items.first_moment > 0.0)) {
    throw std::domain_error("mean item degree is zero");
  }
  return users.first_moment * (items.second_moment / items.first_moment - 1.0);
}

SimilarUserCounts similar_user_counts(const Bigraph& graph) {
  const auto count = static_cast<std::int64_t>(graph.num_users());
  SimilarUserCounts result;
  result.neighbors.resize(static_cast<std::size_t>(count));
  result.second_items.resize(static_cast<std::size_t>(count));
  result.second_items_total.resize(static_cast<std::size_t>(count));
#pragma omp parallel
  {
    StampSet users(graph.num_users());
    StampSet own(graph.num_items());
    StampSet reached(graph.num_items());
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t index = 0; index < count; ++index) {
      const auto user = static_cast<std::uint32_t>(index);
      users.clear();
      own.clear();
      reached.clear();
      users.insert(user);
      for (const std::uint32_t item : graph.neighbors(Side::kUser, user)) own.insert(item);
      std::uint32_t neighbors = 0;
      std::uint32_t total = 0;
      std::uint32_t exclusive = 0;
      for (const std::uint32_t item : graph.neighbors(Side::kUser, user)) {
        for (const std::uint32_t other : graph.neighbors(Side::kItem, item)) {
          if (!users.insert(other)) continue;
          ++neighbors;
          for (const std::uint32_t far : graph.neighbors(Side::kUser, other)) {
            if (!reached.insert(far)) continue;
            ++total;
            if (!own.contains(far)) ++exclusive;
          }
        }
      }
      result.neighbors[index] = neighbors;
      result.second_items[index] = exclusive;
      result.second_items_total[index] = total;
    }
  }
  return result;
}

SimilarUserStats summarize_counts(const SimilarUserCounts& counts) {
  SimilarUserStats stats;
  const std::size_t n = counts.neighbors.size();
  if (n == 0) return stats;
  std::uint64_t neighbors = 0;
  std::uint64_t exclusive = 0;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    neighbors += counts.neighbors[k];
    exclusive += counts.second_items[k];
    total += counts.second_items_total[k];
  }
  stats.mean_neighbors = static_cast<double>(neighbors) / static_cast<double>(n);
  stats.mean_second_items = static_cast<double>(exclusive) / static_cast<double>(n);
  stats.mean_second_items_total = static_cast<double>(total) / static_cast<double>(n);
  return stats;
}

SimilarUserStats similar_user_stats(const Bigraph& graph) {
  return summarize_counts(similar_user_counts(graph));
}

namespace {

// Nodes created by holdout iterations carry no training edges and sit after
// every training node in id order. The summary leaves such a tail out.
std::optional<Bigraph> without_trailing_isolates(const Bigraph& graph) {
  std::uint32_t users = 0;
  std::uint32_t items = 0;
  for (const Edge& edge : graph.edges()) {
    users = std::max(users, edge.user + 1);
    items = std::max(items, edge.item + 1);
  }
  if (users == graph.num_users() && items == graph.num_items()) return std::nullopt;
  return Bigraph(users, items, graph.edges());
}

}  // namespace

GraphSummary summarize(const Bigraph& full) {
  const std::optional<Bigraph> trimmed = without_trailing_isolates(full);
  const Bigraph& graph = trimmed ? *trimmed : full;
  GraphSummary summary;
  summary.users = graph.num_users();
  summary.items = graph.num_items();
  summary.edges = graph.num_edges();
  const DegreeDistribution users = degree_distribution(graph, Side::kUser);
  const DegreeDistribution items = degree_distribution(graph, Side::kItem);
  summary.mean_user_degree = users.first_moment;
  summary.mean_item_degree = items.first_moment;
  summary.mean_blcc = mean_blcc(blcc_all(graph, Side::kUser));
  const SimilarUserStats similar = similar_user_stats(graph);
  summary.mean_neighbors = similar.mean_neighbors;
  summary.mean_second_items = similar.mean_second_items;
  summary.mean_second_items_total = similar.mean_second_items_total;
  if (items.first_moment > 0.0) summary.newman_estimate = newman_second_neighbors(users, items);
  return summary;
}

}  // namespace bigrec::stats
