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

#include "bigrec/bigraph.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "bigrec/errors.hpp"

namespace bigrec {

std::string_view to_string(Side side) { return side == Side::kUser ? "user" : "item"; }

namespace {

void check_ids(const std::vector<Edge>& edges, std::size_t num_users, std::size_t num_items,
               const char* field) {
  for (const Edge& edge : edges) {
    if (edge.user >= num_users || edge.item >= num_items) {
      throw ValidationError(field, "edge (" + std::to_string(edge.user) + ", " +
                                       std::to_string(edge.item) + ") references an unknown node");
    }
  }
}

}  // namespace

Bigraph::Bigraph(std::size_t num_users, std::size_t num_items, std::vector<Edge> edges,
                 std::vector<Edge> holdout, std::optional<GeneratorParams> params)
    : num_users_(num_users),
      num_items_(num_items),
      edges_(std::move(edges)),
      holdout_(std::move(holdout)),
      params_(std::move(params)) {
  check_ids(edges_, num_users_, num_items_, "edges");
  check_ids(holdout_, num_users_, num_items_, "holdout_edges");

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() + holdout_.size());
  for (const auto* list : {&edges_, &holdout_}) {
    for (const Edge& edge : *list) {
      const std::uint64_t key = (std::uint64_t{edge.user} << 32) | edge.item;
      if (!seen.insert(key).second) {
        throw ValidationError("edges", "duplicate edge (" + std::to_string(edge.user) + ", " +
                                           std::to_string(edge.item) + ")");
      }
    }
  }

  auto build = [this](std::size_t count, bool by_user) {
    Adjacency adj;
    adj.offsets.assign(count + 1, 0);
    for (const Edge& edge : edges_) ++adj.offsets[(by_user ? edge.user : edge.item) + 1];
    for (std::size_t k = 0; k < count; ++k) adj.offsets[k + 1] += adj.offsets[k];
    adj.targets.resize(edges_.size());
    std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const Edge& edge : edges_) {
      const std::uint32_t from = by_user ? edge.user : edge.item;
      adj.targets[cursor[from]++] = by_user ? edge.item : edge.user;
    }
    for (std::size_t k = 0; k < count; ++k) {
      std::sort(adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[k]),
                adj.targets.begin() + static_cast<std::ptrdiff_t>(adj.offsets[k + 1]));
    }
    return adj;
  };
  user_adj_ = build(num_users_, true);
  item_adj_ = build(num_items_, false);
}

std::span<const std::uint32_t> Bigraph::neighbors(Side side, std::uint32_t node) const {
  const Adjacency& adj = adjacency(side);
  return std::span<const std::uint32_t>(adj.targets.data() + adj.offsets[node],
                                        adj.offsets[node + 1] - adj.offsets[node]);
}

}  // namespace bigrec
