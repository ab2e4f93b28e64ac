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

#ifndef BIGREC_GRAPH_STATS_HPP_
#define BIGREC_GRAPH_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "bigrec/bigraph.hpp"

namespace bigrec::stats {

// Bipartite local clustering coefficient of one node:
//   1 - |N2(j)| / sum_{i in N1(j)} (k_i - 1)
// with N2(j) the distinct nodes at distance two, j excluded. When the
// denominator is zero the value is 0 and `defined` is false; such nodes are
// left out of means.
struct Blcc {
  double value = 0.0;
  bool defined = false;
};

Blcc blcc(const Bigraph& graph, Side side, std::uint32_t node);

// BLCC of every node of `side`, fanned out over OpenMP threads.
std::vector<Blcc> blcc_all(const Bigraph& graph, Side side);

// Mean over nodes with a defined value; 0 when none is defined.
double mean_blcc(const std::vector<Blcc>& values);

struct DegreeDistribution {
  Side side = Side::kUser;
  std::map<std::uint32_t, std::uint64_t> histogram;  // degree -> node count
  double first_moment = 0.0;
  double second_moment = 0.0;

  std::uint64_t node_count() const;
};

DegreeDistribution degree_distribution(const Bigraph& graph, Side side);

// Tree-like estimate of the mean number of second neighbours of a user,
// <U> (<I^2>/<I> - 1). Throws std::domain_error when <I> is zero.
double newman_second_neighbors(const DegreeDistribution& users, const DegreeDistribution& items);

// Per-user counts behind the "potentially similar users" statistics.
struct SimilarUserCounts {
  std::vector<std::uint32_t> neighbors;           // other users sharing an item
  std::vector<std::uint32_t> second_items;        // their items, own items excluded
  std::vector<std::uint32_t> second_items_total;  // their items, own items included
};

struct SimilarUserStats {
  double mean_neighbors = 0.0;
  double mean_second_items = 0.0;        // own items excluded
  double mean_second_items_total = 0.0;  // own items included
};

SimilarUserCounts similar_user_counts(const Bigraph& graph);
SimilarUserStats similar_user_stats(const Bigraph& graph);
SimilarUserStats summarize_counts(const SimilarUserCounts& counts);

struct GraphSummary {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t edges = 0;
  double mean_user_degree = 0.0;
  double mean_item_degree = 0.0;
  double mean_blcc = 0.0;  // over users with a defined value
  double mean_neighbors = 0.0;
  double mean_second_items = 0.0;
  double mean_second_items_total = 0.0;
  double newman_estimate = 0.0;  // 0 when undefined

  friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

// Covers the training graph. Trailing nodes without training edges (the
// nodes added by holdout iterations) are not counted.
GraphSummary summarize(const Bigraph& graph);

// Straightforward single-threaded versions built on hash sets. They are the
// reference the OpenMP kernels above are tested and benchmarked against.
namespace serial {

std::vector<Blcc> blcc_all(const Bigraph& graph, Side side);
SimilarUserCounts similar_user_counts(const Bigraph& graph);

}  // namespace serial

}  // namespace bigrec::stats

#endif  // BIGREC_GRAPH_STATS_HPP_
