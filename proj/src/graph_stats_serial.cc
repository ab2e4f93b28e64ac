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

#include <unordered_set>

#include "bigrec/graph_stats.hpp"

namespace bigrec::stats::serial {

std::vector<Blcc> blcc_all(const Bigraph& graph, Side side) {
  const Side other = opposite(side);
  std::vector<Blcc> values;
  values.reserve(graph.num_nodes(side));
  for (std::uint32_t node = 0; node < graph.num_nodes(side); ++node) {
    std::unordered_set<std::uint32_t> second;
    std::uint64_t potential = 0;
    for (const std::uint32_t first : graph.neighbors(side, node)) {
      potential += graph.degree(other, first) - 1;
      for (const std::uint32_t candidate : graph.neighbors(other, first)) {
        if (candidate != node) second.insert(candidate);
      }
    }
    if (potential == 0) {
      values.push_back(Blcc{0.0, false});
    } else {
      values.push_back(Blcc{
          1.0 - static_cast<double>(second.size()) / static_cast<double>(potential), true});
    }
  }
  return values;
}

SimilarUserCounts similar_user_counts(const Bigraph& graph) {
  SimilarUserCounts result;
  for (std::uint32_t user = 0; user < graph.num_users(); ++user) {
    const auto own_list = graph.neighbors(Side::kUser, user);
    const std::unordered_set<std::uint32_t> own(own_list.begin(), own_list.end());
    std::unordered_set<std::uint32_t> similar;
    for (const std::uint32_t item : own_list) {
      for (const std::uint32_t other : graph.neighbors(Side::kItem, item)) {
        if (other != user) similar.insert(other);
      }
    }
    std::unordered_set<std::uint32_t> reached;
    for (const std::uint32_t other : similar) {
      for (const std::uint32_t item : graph.neighbors(Side::kUser, other)) reached.insert(item);
    }
    std::uint32_t exclusive = 0;
    for (const std::uint32_t item : reached) {
      if (own.count(item) == 0) ++exclusive;
    }
    result.neighbors.push_back(static_cast<std::uint32_t>(similar.size()));
    result.second_items.push_back(exclusive);
    result.second_items_total.push_back(static_cast<std::uint32_t>(reached.size()));
  }
  return result;
}

}  // namespace bigrec::stats::serial
