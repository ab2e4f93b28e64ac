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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "bigrec/rating_data.hpp"

namespace bigrec::oracle {

double ReplayRng::uniform() {
  const std::uint64_t word = engine_();
  return std::ldexp(static_cast<double>(word >> 11), -53);
}

std::size_t ReplayRng::index(std::size_t n) {
  // 2^64 mod n, computed without 128-bit arithmetic.
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  while (true) {
    const std::uint64_t word = engine_();
    if (word >= limit) return static_cast<std::size_t>(word % n);
  }
}

GeneratedEdges replay_generate(const GeneratorParams& params) {
  ReplayRng rng(params.seed);
  GeneratedEdges out;
  // Neighbour lists in attachment order, one table per side (0 = users).
  std::vector<std::vector<std::uint32_t>> adj[2];
  // Endpoint multisets in attachment order: a node appears once per edge.
  std::vector<std::uint32_t> ends[2];
  auto rating = [&] { return params.rating_values[rng.index(params.rating_values.size())]; };
  auto link = [&](std::uint32_t user, std::uint32_t item, bool holdout) {
    adj[0][user].push_back(item);
    adj[1][item].push_back(user);
    ends[0].push_back(user);
    ends[1].push_back(item);
    (holdout ? out.holdout : out.edges).push_back(Edge{user, item, rating()});
  };
  for (std::uint32_t k = 0; k < params.m; ++k) {
    adj[0].emplace_back();
    adj[1].emplace_back();
    link(k, k, false);
  }

  const std::uint64_t steps = std::uint64_t{params.T} + params.holdout_steps;
  for (std::uint64_t t = 0; t < steps; ++t) {
    const bool holdout = t >= params.T;
    const int s = rng.bernoulli(params.p) ? 0 : 1;
    const int o = 1 - s;
    const std::uint32_t want = s == 0 ? params.u : params.v;
    const double share = s == 0 ? params.alpha : params.beta;
    const std::size_t avail = adj[o].size();
    const auto node = static_cast<std::uint32_t>(adj[s].size());
    adj[s].emplace_back();
    auto has = [&](std::uint32_t x) {
      return std::count(adj[s][node].begin(), adj[s][node].end(), x) > 0;
    };
    auto unused = [&] {
      std::vector<std::uint32_t> pool;
      for (std::uint32_t x = 0; x < avail; ++x) {
        if (!has(x)) pool.push_back(x);
      }
      return pool[rng.index(pool.size())];
    };
    auto pref = [&] {
      for (int r = 0; r < 64; ++r) {
        const std::uint32_t x = ends[o][rng.index(ends[o].size())];
        if (!has(x)) return x;
      }
      return unused();
    };
    auto random_target = [&] {
      for (int r = 0; r < 64; ++r) {
        const auto x = static_cast<std::uint32_t>(rng.index(avail));
        if (!has(x)) return x;
      }
      return unused();
    };
    for (std::uint32_t k = 0; k < std::min<std::size_t>(want, avail); ++k) {
      std::uint32_t target;
      if (!rng.bernoulli(share)) {
        target = random_target();
      } else if (!rng.bernoulli(params.b)) {
        target = pref();
      } else {
        ++out.bounce_attempts;
        std::optional<std::uint32_t> landed;
        const auto& mine = adj[s][node];
        if (!mine.empty()) {
          const std::uint32_t a = mine[rng.index(mine.size())];
          std::vector<std::uint32_t> step2;
          std::copy_if(adj[o][a].begin(), adj[o][a].end(), std::back_inserter(step2),
                       [&](std::uint32_t w) { return w != node; });
          if (!step2.empty()) {
            const std::uint32_t w = step2[rng.index(step2.size())];
            std::vector<std::uint32_t> step3;
            std::copy_if(adj[s][w].begin(), adj[s][w].end(), std::back_inserter(step3),
                         [&](std::uint32_t x) { return !has(x); });
            if (!step3.empty()) landed = step3[rng.index(step3.size())];
          }
        }
        target = landed ? *landed : pref();
      }
      if (s == 0) {
        link(node, target, holdout);
      } else {
        link(target, node, holdout);
      }
    }
  }
  out.users = adj[0].size();
  out.items = adj[1].size();
  return out;
}

PlainGraph plain_graph(const Bigraph& graph) {
  PlainGraph g;
  g.users = graph.num_users();
  g.items = graph.num_items();
  g.adj.resize(g.users + g.items);
  for (const Edge& e : graph.edges()) {
    g.adj[e.user].insert(g.users + e.item);
    g.adj[g.users + e.item].insert(e.user);
  }
  return g;
}

BlccValue brute_blcc(const PlainGraph& graph, std::size_t node) {
  std::vector<int> dist(graph.adj.size(), -1);
  std::queue<std::size_t> queue;
  dist[node] = 0;
  queue.push(node);
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop();
    if (dist[x] == 2) continue;
    for (const std::size_t y : graph.adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push(y);
      }
    }
  }
  const auto second = static_cast<std::size_t>(std::count(dist.begin(), dist.end(), 2));
  std::size_t potential = 0;
  for (const std::size_t y : graph.adj[node]) potential += graph.adj[y].size() - 1;
  if (potential == 0) return {};
  return BlccValue{1.0 - static_cast<double>(second) / static_cast<double>(potential), true};
}

std::size_t brute_neighbors(const PlainGraph& graph, std::size_t user) {
  std::set<std::size_t> users;
  for (const std::size_t item : graph.adj[user]) {
    for (const std::size_t other : graph.adj[item]) {
      if (other != user) users.insert(other);
    }
  }
  return users.size();
}

std::size_t brute_second_items(const PlainGraph& graph, std::size_t user, bool include_own) {
  std::set<std::size_t> items;
  for (const std::size_t item : graph.adj[user]) {
    for (const std::size_t other : graph.adj[item]) {
      if (other == user) continue;
      for (const std::size_t far : graph.adj[other]) {
        if (include_own || graph.adj[user].count(far) == 0) items.insert(far);
      }
    }
  }
  return items.size();
}

Bigraph random_bigraph(std::mt19937_64& rng, std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> side(1, max_nodes / 2);
  const std::size_t users = side(rng);
  const std::size_t items = side(rng);
  std::bernoulli_distribution keep(std::uniform_real_distribution<double>(0.05, 0.7)(rng));
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < users; ++u) {
    for (std::uint32_t i = 0; i < items; ++i) {
      if (keep(rng)) edges.push_back(Edge{u, i, static_cast<int>(rng() % 6)});
    }
  }
  if (edges.empty()) edges.push_back(Edge{0, 0, 3});
  return Bigraph(users, items, std::move(edges));
}

Bigraph random_tree(std::mt19937_64& rng, std::size_t max_nodes) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
  // Grow by attaching each new node to a random existing node of the other
  // side. Node 0 is user 0, node 1 is item 0.
  std::vector<std::pair<int, std::uint32_t>> nodes = {{0, 0}, {1, 0}};
  std::size_t counts[2] = {1, 1};
  std::vector<Edge> edges = {Edge{0, 0, 1}};
  while (nodes.size() < n) {
    const auto [side, id] = nodes[rng() % nodes.size()];
    const int other = 1 - side;
    const auto fresh = static_cast<std::uint32_t>(counts[other]++);
    nodes.emplace_back(other, fresh);
    edges.push_back(side == 0 ? Edge{id, fresh, 1} : Edge{fresh, id, 1});
  }
  return Bigraph(counts[0], counts[1], std::move(edges));
}

std::vector<RatingEntry> sparse(const Dense& dense) {
  std::vector<RatingEntry> out;
  for (std::size_t d = 0; d < dense.size(); ++d) {
    if (dense[d]) out.push_back(RatingEntry{static_cast<std::uint32_t>(d),
                                            static_cast<float>(*dense[d])});
  }
  return out;
}

namespace {

std::optional<double> two_pass_pearson(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    double less = 0, equal = 0;
    for (const double w : v) {
      less += w < v[a];
      equal += w == v[a];
    }
    out[a] = less + (equal + 1) / 2;
  }
  return out;
}

}  // namespace

double g_squared(double k11, double k12, double k21, double k22) {
  const double n = k11 + k12 + k21 + k22;
  const double cells[2][2] = {{k11, k12}, {k21, k22}};
  const double rows[2] = {k11 + k12, k21 + k22};
  const double cols[2] = {k11 + k21, k12 + k22};
  double g = 0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double k = cells[r][c];
      if (k > 0) g += k * std::log(k * n / (rows[r] * cols[c]));
    }
  }
  return 2 * g;
}

std::optional<double> similarity(SimilarityKind kind, const Dense& x, const Dense& y,
                                 std::size_t universe) {
  std::vector<double> cx, cy;
  std::size_t nx = 0, ny = 0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    nx += x[d].has_value();
    ny += y[d].has_value();
    if (x[d] && y[d]) {
      cx.push_back(*x[d]);
      cy.push_back(*y[d]);
    }
  }
  const double both = static_cast<double>(cx.size());
  switch (kind) {
    case SimilarityKind::kPearson:
      return two_pass_pearson(cx, cy);
    case SimilarityKind::kSpearman:
      if (cx.size() < 2) return std::nullopt;
      return two_pass_pearson(ranks(cx), ranks(cy));
    case SimilarityKind::kEuclidean: {
      if (cx.empty()) return std::nullopt;
      double d2 = 0;
      for (std::size_t k = 0; k < cx.size(); ++k) d2 += (cx[k] - cy[k]) * (cx[k] - cy[k]);
      return 1 / (1 + std::sqrt(d2));
    }
    case SimilarityKind::kTanimoto: {
      const double either = static_cast<double>(nx + ny) - both;
      if (either == 0) return std::nullopt;
      return both / either;
    }
    case SimilarityKind::kLogLikelihood: {
      const double g = g_squared(both, nx - both, ny - both,
                                 static_cast<double>(universe) - (nx + ny - both));
      return 1 - 1 / (1 + g);
    }
  }
  return std::nullopt;
}

std::vector<Edge> matrix_edges(const Matrix& ratings) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < ratings.size(); ++u) {
    for (std::uint32_t i = 0; i < ratings[u].size(); ++i) {
      if (ratings[u][i]) edges.push_back(Edge{u, i, *ratings[u][i]});
    }
  }
  return edges;
}

namespace {

Dense column(const Matrix& ratings, std::size_t item) {
  Dense out;
  for (const Dense& row : ratings) out.push_back(row[item]);
  return out;
}

double clamp05(double v) { return std::min(5.0, std::max(0.0, v)); }

struct Scored {
  std::uint32_t id;
  double s;
};

// The n best by (s desc, id asc), returned in ascending id order.
std::vector<Scored> best(std::vector<Scored> all, std::size_t n) {
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
    return a.s != b.s ? a.s > b.s : a.id < b.id;
  });
  if (all.size() > n) all.resize(n);
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.id < b.id; });
  return all;
}

std::vector<Scored> user_neighborhood(const RecommenderConfig& config, const Matrix& ratings,
                                      std::uint32_t user) {
  const std::size_t items = ratings.empty() ? 0 : ratings[0].size();
  const auto mine = sparse(ratings[user]);
  std::vector<Scored> members;
  for (std::uint32_t w = 0; w < ratings.size(); ++w) {
    if (w == user) continue;
    const auto theirs = sparse(ratings[w]);
    const auto s = bigrec::similarity(config.similarity, mine, theirs, items);
    if (!s) continue;
    if (config.algorithm == Algorithm::kUserThreshold) {
      if (*s >= *config.threshold) members.push_back({w, *s});
    } else if (*s > 0) {
      members.push_back({w, *s});
    }
  }
  if (config.algorithm == Algorithm::kUserBased) {
    return best(members, config.neighborhood_size);
  }
  return members;
}

std::optional<double> svd_estimate(const SvdReplay& model, std::uint32_t user,
                                   std::uint32_t item) {
  double dot = 0;
  for (std::size_t f = 0; f < model.user_factors[user].size(); ++f) {
    dot += model.user_factors[user][f] * model.item_factors[item][f];
  }
  return clamp05(model.global_mean + dot);
}

std::optional<double> estimate_impl(const RecommenderConfig& config, const Matrix& ratings,
                                    std::uint32_t user, std::uint32_t item,
                                    const SvdReplay* svd) {
  const std::size_t num_items = ratings[0].size();
  switch (config.algorithm) {
    case Algorithm::kUserBased:
    case Algorithm::kUserThreshold: {
      double num = 0, den = 0;
      bool any = false;
      for (const Scored& w : user_neighborhood(config, ratings, user)) {
        if (!ratings[w.id][item]) continue;
        any = true;
        num += w.s * static_cast<double>(*ratings[w.id][item]);
        den += std::abs(w.s);
      }
      if (!any || den == 0) return std::nullopt;
      return clamp05(num / den);
    }
    case Algorithm::kItemBased:
    case Algorithm::kKnnItem: {
      const auto target = sparse(column(ratings, item));
      std::vector<Scored> terms;
      for (std::uint32_t j = 0; j < num_items; ++j) {
        if (j == item || !ratings[user][j]) continue;
        const auto s =
            bigrec::similarity(config.similarity, target, sparse(column(ratings, j)),
                               ratings.size());
        if (s) terms.push_back({j, *s});
      }
      if (config.algorithm == Algorithm::kKnnItem) terms = best(terms, config.knn_k);
      double num = 0, den = 0;
      for (const Scored& t : terms) {
        num += t.s * static_cast<double>(*ratings[user][t.id]);
        den += std::abs(t.s);
      }
      if (den == 0) return std::nullopt;
      return clamp05(num / den);
    }
    case Algorithm::kSlopeOne: {
      double num = 0, den = 0;
      for (std::uint32_t j = 0; j < num_items; ++j) {
        if (j == item || !ratings[user][j]) continue;
        const std::uint32_t lo = std::min(item, j);
        const std::uint32_t hi = std::max(item, j);
        double sum = 0;
        int count = 0;
        for (const Dense& row : ratings) {
          if (row[lo] && row[hi]) {
            sum += static_cast<double>(*row[lo]) - *row[hi];
            ++count;
          }
        }
        if (count == 0) continue;
        const double mean = sum / count;
        const double diff = item < j ? mean : -mean;
        num += (*ratings[user][j] + diff) * count;
        den += count;
      }
      if (den == 0) return std::nullopt;
      return clamp05(num / den);
    }
    case Algorithm::kSvd:
      return svd_estimate(*svd, user, item);
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> estimate(const RecommenderConfig& config, const Matrix& ratings,
                               std::uint32_t user, std::uint32_t item) {
  if (config.algorithm == Algorithm::kSvd) {
    const SvdReplay model = replay_svd(config, ratings);
    return estimate_impl(config, ratings, user, item, &model);
  }
  return estimate_impl(config, ratings, user, item, nullptr);
}

std::vector<RecommendedItem> recommend(const RecommenderConfig& config, const Matrix& ratings,
                                       std::uint32_t user, std::size_t top_n) {
  const std::size_t num_items = ratings[0].size();
  std::set<std::uint32_t> candidates;
  const bool by_neighborhood = config.algorithm == Algorithm::kUserBased ||
                               config.algorithm == Algorithm::kUserThreshold;
  if (by_neighborhood) {
    for (const Scored& w : user_neighborhood(config, ratings, user)) {
      for (std::uint32_t i = 0; i < num_items; ++i) {
        if (ratings[w.id][i]) candidates.insert(i);
      }
    }
  } else {
    for (std::uint32_t w = 0; w < ratings.size(); ++w) {
      if (w == user) continue;
      bool shares = false;
      for (std::uint32_t i = 0; i < num_items; ++i) {
        shares = shares || (ratings[w][i] && ratings[user][i]);
      }
      if (!shares) continue;
      for (std::uint32_t i = 0; i < num_items; ++i) {
        if (ratings[w][i]) candidates.insert(i);
      }
    }
  }
  std::optional<SvdReplay> svd;
  if (config.algorithm == Algorithm::kSvd) svd = replay_svd(config, ratings);
  std::vector<RecommendedItem> out;
  for (const std::uint32_t i : candidates) {
    if (ratings[user][i]) continue;
    const auto e = estimate_impl(config, ratings, user, i, svd ? &*svd : nullptr);
    if (e) out.push_back(RecommendedItem{i, *e});
  }
  std::sort(out.begin(), out.end(), [](const RecommendedItem& a, const RecommendedItem& b) {
    return a.estimate != b.estimate ? a.estimate > b.estimate : a.item < b.item;
  });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

SvdReplay replay_svd(const RecommenderConfig& config, const Matrix& ratings) {
  ReplayRng rng(config.seed);
  const std::size_t users = ratings.size();
  const std::size_t items = ratings[0].size();
  SvdReplay m;
  m.user_factors.assign(users, std::vector<double>(config.factors));
  m.item_factors.assign(items, std::vector<double>(config.factors));
  for (auto& row : m.user_factors) {
    for (double& x : row) x = rng.uniform(-0.05, 0.05);
  }
  for (auto& row : m.item_factors) {
    for (double& x : row) x = rng.uniform(-0.05, 0.05);
  }
  double sum = 0;
  std::size_t count = 0;
  for (const Dense& row : ratings) {
    for (const auto& r : row) {
      if (r) {
        sum += *r;
        ++count;
      }
    }
  }
  m.global_mean = sum / static_cast<double>(count);
  for (std::uint32_t epoch = 0; epoch < config.training_iterations; ++epoch) {
    for (std::size_t u = 0; u < users; ++u) {
      for (std::size_t i = 0; i < items; ++i) {
        if (!ratings[u][i]) continue;
        auto& p = m.user_factors[u];
        auto& q = m.item_factors[i];
        double dot = 0;
        for (std::size_t f = 0; f < config.factors; ++f) dot += p[f] * q[f];
        const double err = *ratings[u][i] - (m.global_mean + dot);
        for (std::size_t f = 0; f < config.factors; ++f) {
          const double pu = p[f];
          const double qi = q[f];
          p[f] += config.learning_rate * (err * qi - config.regularization * pu);
          q[f] += config.learning_rate * (err * pu - config.regularization * qi);
        }
      }
    }
  }
  return m;
}

}  // namespace bigrec::oracle
