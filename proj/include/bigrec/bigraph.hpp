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

#ifndef BIGREC_BIGRAPH_HPP_
#define BIGREC_BIGRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bigrec/params.hpp"

namespace bigrec {

// The two node modalities. Users and items have separate dense id spaces,
// so (Side::kUser, 0) and (Side::kItem, 0) are different nodes.
enum class Side : std::uint8_t { kUser, kItem };

constexpr Side opposite(Side side) { return side == Side::kUser ? Side::kItem : Side::kUser; }
std::string_view to_string(Side side);

// One rating: an edge between a user and an item.
struct Edge {
  std::uint32_t user = 0;
  std::uint32_t item = 0;
  int rating = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable simple bipartite rating graph.
//
// Training edges define the adjacency and degrees. Holdout edges come from
// extra growth iterations and are kept aside as the update batch; nodes that
// only appear in holdout edges are counted in num_users()/num_items() with
// training degree zero.
class Bigraph {
 public:
  // Throws ValidationError if an id is out of range or a (user, item) pair
  // repeats anywhere in edges ∪ holdout.
  Bigraph(std::size_t num_users, std::size_t num_items, std::vector<Edge> edges,
          std::vector<Edge> holdout = {}, std::optional<GeneratorParams> params = std::nullopt);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t num_nodes(Side side) const {
    return side == Side::kUser ? num_users_ : num_items_;
  }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Edge>& holdout_edges() const { return holdout_; }
  const std::optional<GeneratorParams>& params() const { return params_; }

  // Training neighbours in ascending id order.
  std::span<const std::uint32_t> neighbors(Side side, std::uint32_t node) const;
  std::uint32_t degree(Side side, std::uint32_t node) const {
    return static_cast<std::uint32_t>(neighbors(side, node).size());
  }

 private:
  struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> targets;
  };

  const Adjacency& adjacency(Side side) const {
    return side == Side::kUser ? user_adj_ : item_adj_;
  }

  std::size_t num_users_;
  std::size_t num_items_;
  std::vector<Edge> edges_;
  std::vector<Edge> holdout_;
  std::optional<GeneratorParams> params_;
  Adjacency user_adj_;
  Adjacency item_adj_;
};

}  // namespace bigrec

#endif  // BIGREC_BIGRAPH_HPP_
