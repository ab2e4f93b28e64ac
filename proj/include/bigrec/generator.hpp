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

#ifndef BIGREC_GENERATOR_HPP_
#define BIGREC_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bigrec/bigraph.hpp"
#include "bigrec/params.hpp"
#include "bigrec/rng.hpp"

namespace bigrec {

// What one growth iteration did. For every iteration
//   preferential + random + bounced + shortfall == requested
// where `preferential` includes bounces that fell back to a preferential
// draw (also counted in bounce_fallbacks).
struct IterationTrace {
  Side added = Side::kUser;
  bool holdout = false;
  std::uint32_t requested = 0;
  std::uint32_t preferential = 0;
  std::uint32_t random = 0;
  std::uint32_t bounced = 0;
  std::uint32_t shortfall = 0;
  std::uint32_t bounce_attempts = 0;
  std::uint32_t bounce_fallbacks = 0;
};

using GrowthTrace = std::vector<IterationTrace>;

struct BounceResult {
  std::uint32_t node = 0;
  bool fell_back = false;
};

// Mutable state of the bipartite growth process.
//
// Per iteration the random stream is consumed in a fixed order:
//   1. modality:           bernoulli(p), true means a new user;
//   2. for each of the min(u, |opposite|) new edges, in order:
//      a. attachment type: bernoulli(alpha) for users, bernoulli(beta) for items;
//      b. bounce decision: bernoulli(b), only for preferential edges;
//      c. target:          uniform draw, preferential draw, or the bounce
//                          micro-steps (each an index() draw);
//      d. rating:          index(|rating_values|).
// Initialization draws one rating per initial edge, edge k first.
//
// Target draws never repeat a node already joined to the new node: a
// colliding draw is retried up to kMaxRedraws times, after which the target
// is drawn uniformly from the still-unused nodes. Preferential draws see the
// degrees of all edges created so far, including those of the current
// iteration and of holdout iterations.
class GrowthProcess {
 public:
  static constexpr int kMaxRedraws = 64;

  // Creates the initial m disjoint user-item pairs.
  explicit GrowthProcess(GeneratorParams params);

  // Resumes growth from an existing graph; its holdout edges are treated as
  // ordinary history. The random stream starts fresh from params.seed.
  GrowthProcess(GeneratorParams params, const Bigraph& graph);

  // One growth iteration. New edges go to the holdout set when `holdout`.
  void step(bool holdout = false);

  // Runs the three-hop re-routing for `node` (which must already exist):
  // joined neighbour -> its other neighbour -> an unjoined neighbour of that.
  // Dead ends fall back to a preferential draw.
  BounceResult bounce(Side side, std::uint32_t node);

  // Degree-proportional draw over all nodes of `side`, ignoring simplicity.
  std::uint32_t preferential_draw(Side side);

  std::size_t num_nodes(Side side) const { return adjacency(side).size(); }
  std::uint32_t degree(Side side, std::uint32_t node) const {
    return static_cast<std::uint32_t>(adjacency(side)[node].size());
  }
  const GrowthTrace& trace() const { return trace_; }
  const GeneratorParams& params() const { return params_; }

  Bigraph snapshot() const;

 private:
  using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

  AdjacencyList& adjacency(Side side) { return side == Side::kUser ? users_ : items_; }
  const AdjacencyList& adjacency(Side side) const {
    return side == Side::kUser ? users_ : items_;
  }
  std::vector<std::uint32_t>& endpoints(Side side) {
    return side == Side::kUser ? user_endpoints_ : item_endpoints_;
  }

  std::uint32_t add_node(Side side);
  void connect(std::uint32_t user, std::uint32_t item, int rating, bool holdout);
  int draw_rating();

  // Targets on the side opposite `side` for new node `node`.
  std::uint32_t draw_uniform_target(Side side, std::uint32_t node);
  std::uint32_t draw_preferential_target(Side side, std::uint32_t node);
  std::uint32_t draw_unused_target(Side side, std::uint32_t node);
  bool joined(Side side, std::uint32_t node, std::uint32_t target) const;

  GeneratorParams params_;
  Rng rng_;
  AdjacencyList users_;
  AdjacencyList items_;
  // Node ids repeated once per incident edge; a uniform pick is a
  // degree-proportional pick.
  std::vector<std::uint32_t> user_endpoints_;
  std::vector<std::uint32_t> item_endpoints_;
  std::vector<Edge> edges_;
  std::vector<Edge> holdout_;
  GrowthTrace trace_;
};

// m initial pairs, no growth.
Bigraph initialize(const GeneratorParams& params);

// Initial pairs, then T iterations, then holdout_steps iterations whose edges
// form the holdout set. Throws ValidationError for invalid params.
Bigraph generate(const GeneratorParams& params, GrowthTrace* trace = nullptr);

}  // namespace bigrec

#endif  // BIGREC_GENERATOR_HPP_
