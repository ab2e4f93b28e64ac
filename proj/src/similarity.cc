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

#include "bigrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bigrec {
namespace {

// Co-rated values of two sparse vectors, in ascending dimension order.
struct CoRated {
  std::vector<double> x;
  std::vector<double> y;
};

void gather_co_rated(SparseRatings a, SparseRatings b, CoRated& out) {
  out.x.clear();
  out.y.clear();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].id < b[j].id) {
      ++i;
    } else if (b[j].id < a[i].id) {
      ++j;
    } else {
      out.x.push_back(a[i].value);
      out.y.push_back(b[j].value);
      ++i;
      ++j;
    }
  }
}

std::size_t count_co_rated(SparseRatings a, SparseRatings b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t both = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].id < b[j].id) {
      ++i;
    } else if (b[j].id < a[i].id) {
      ++j;
    } else {
      ++both;
      ++i;
      ++j;
    }
  }
  return both;
}

// Streaming co-moments (Welford). The update is written symmetrically in x
// and y so that swapping the two vectors cannot change the rounding.
class CoMoments {
 public:
  void add(double x, double y) {
    ++n_;
    const double dx = x - mean_x_;
    const double dy = y - mean_y_;
    mean_x_ += dx / static_cast<double>(n_);
    mean_y_ += dy / static_cast<double>(n_);
    const double ex = x - mean_x_;
    const double ey = y - mean_y_;
    sxx_ += dx * ex;
    syy_ += dy * ey;
    sxy_ += 0.5 * (dx * ey + dy * ex);
  }

  std::optional<double> correlation() const {
    if (n_ < 2 || sxx_ == 0.0 || syy_ == 0.0) return std::nullopt;
    return std::clamp(sxy_ / std::sqrt(sxx_ * syy_), -1.0, 1.0);
  }

 private:
  std::size_t n_ = 0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  double sxx_ = 0.0;
  double syy_ = 0.0;
  double sxy_ = 0.0;
};

std::optional<double> correlation(std::span<const double> x, std::span<const double> y) {
  CoMoments moments;
  for (std::size_t k = 0; k < x.size(); ++k) moments.add(x[k], y[k]);
  return moments.correlation();
}

// Pearson streams the merge and never materializes the co-rated values.
std::optional<double> pearson(SparseRatings a, SparseRatings b) {
  CoMoments moments;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].id < b[j].id) {
      ++i;
    } else if (b[j].id < a[i].id) {
      ++j;
    } else {
      moments.add(a[i].value, b[j].value);
      ++i;
      ++j;
    }
  }
  return moments.correlation();
}

std::optional<double> euclidean(SparseRatings a, SparseRatings b) {
  std::size_t n = 0;
  double sum_sq = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].id < b[j].id) {
      ++i;
    } else if (b[j].id < a[i].id) {
      ++j;
    } else {
      const double diff = static_cast<double>(a[i].value) - b[j].value;
      sum_sq += diff * diff;
      ++n;
      ++i;
      ++j;
    }
  }
  if (n == 0) return std::nullopt;
  return 1.0 / (1.0 + std::sqrt(sum_sq));
}

std::optional<double> spearman(SparseRatings a, SparseRatings b) {
  thread_local CoRated co;
  gather_co_rated(a, b, co);
  if (co.x.size() < 2) return std::nullopt;
  const std::vector<double> rx = average_ranks(co.x);
  const std::vector<double> ry = average_ranks(co.y);
  return correlation(rx, ry);
}

double x_log_x(std::uint64_t x) {
  return x == 0 ? 0.0 : static_cast<double>(x) * std::log(static_cast<double>(x));
}

double entropy2(std::uint64_t a, std::uint64_t b) { return x_log_x(a + b) - x_log_x(a) - x_log_x(b); }

}  // namespace

std::string_view to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kPearson:
      return "pearson";
    case SimilarityKind::kEuclidean:
      return "euclidean";
    case SimilarityKind::kLogLikelihood:
      return "loglikelihood";
    case SimilarityKind::kSpearman:
      return "spearman";
    case SimilarityKind::kTanimoto:
      return "tanimoto";
  }
  return "unknown";
}

std::optional<SimilarityKind> parse_similarity(std::string_view name) {
  for (const SimilarityKind kind : kAllSimilarityKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

double log_likelihood_ratio(std::uint64_t k11, std::uint64_t k12, std::uint64_t k21,
                            std::uint64_t k22) {
  // The off-diagonal cells enter in a canonical order so that swapping the
  // two vectors cannot change the rounding.
  const std::uint64_t lo = std::min(k12, k21);
  const std::uint64_t hi = std::max(k12, k21);
  const double row_entropy = entropy2(k11 + k12, k21 + k22);
  const double column_entropy = entropy2(k11 + k21, k12 + k22);
  const double matrix_entropy =
      x_log_x(k11 + lo + hi + k22) - x_log_x(k11) - x_log_x(lo) - x_log_x(hi) - x_log_x(k22);
  const double combined = std::min(row_entropy, column_entropy) +
                          std::max(row_entropy, column_entropy);
  if (combined < matrix_entropy) return 0.0;
  return 2.0 * (combined - matrix_entropy);
}

std::optional<double> similarity(SimilarityKind kind, SparseRatings x, SparseRatings y,
                                 std::size_t universe_size) {
  switch (kind) {
    case SimilarityKind::kPearson:
      return pearson(x, y);
    case SimilarityKind::kEuclidean:
      return euclidean(x, y);
    case SimilarityKind::kSpearman:
      return spearman(x, y);
    case SimilarityKind::kLogLikelihood: {
      const std::uint64_t both = count_co_rated(x, y);
      const std::uint64_t x_only = x.size() - both;
      const std::uint64_t y_only = y.size() - both;
      const std::uint64_t seen = both + x_only + y_only;
      const std::uint64_t neither = universe_size > seen ? universe_size - seen : 0;
      const double g2 = log_likelihood_ratio(both, x_only, y_only, neither);
      return 1.0 - 1.0 / (1.0 + g2);
    }
    case SimilarityKind::kTanimoto: {
      const std::size_t both = count_co_rated(x, y);
      const std::size_t either = x.size() + y.size() - both;
      if (either == 0) return std::nullopt;
      return static_cast<double>(both) / static_cast<double>(either);
    }
  }
  return std::nullopt;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // Positions start..end-1 hold equal values; ranks are 1-based.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

double rank_correlation(std::span<const double> a, std::span<const double> b) {
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  return correlation(ra, rb).value_or(0.0);
}

}  // namespace bigrec
