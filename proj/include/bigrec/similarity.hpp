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

#ifndef BIGREC_SIMILARITY_HPP_
#define BIGREC_SIMILARITY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bigrec {

// One non-empty dimension of a sparse rating vector.
struct RatingEntry {
  std::uint32_t id = 0;
  float value = 0.0f;

  friend bool operator==(const RatingEntry&, const RatingEntry&) = default;
};

// Sparse vector: entries sorted by strictly ascending id.
using SparseRatings = std::span<const RatingEntry>;

enum class SimilarityKind : std::uint8_t {
  kPearson,
  kEuclidean,
  kLogLikelihood,
  kSpearman,
  kTanimoto,
};

inline constexpr std::array<SimilarityKind, 5> kAllSimilarityKinds = {
    SimilarityKind::kPearson, SimilarityKind::kEuclidean, SimilarityKind::kLogLikelihood,
    SimilarityKind::kSpearman, SimilarityKind::kTanimoto};

std::string_view to_string(SimilarityKind kind);
std::optional<SimilarityKind> parse_similarity(std::string_view name);

// Similarity of two sparse vectors; std::nullopt means "no evidence".
//
//   Pearson       centered correlation over co-rated dimensions; needs two
//                 co-rated dimensions with non-zero variance on both sides.
//   Euclidean     1 / (1 + distance over co-rated dimensions).
//   LogLikelihood 1 - 1 / (1 + G2) for the 2x2 table of (both, x only,
//                 y only, neither) dimension counts within universe_size.
//   Spearman      Pearson over mean-tie ranks of the co-rated values.
//   Tanimoto      |x ∩ y| / |x ∪ y| over non-empty dimensions.
//
// universe_size must be at least |x ∪ y|; only LogLikelihood reads it.
std::optional<double> similarity(SimilarityKind kind, SparseRatings x, SparseRatings y,
                                 std::size_t universe_size);

// G2 statistic of a 2x2 contingency table, computed through entropies.
double log_likelihood_ratio(std::uint64_t k11, std::uint64_t k12, std::uint64_t k21,
                            std::uint64_t k22);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman's rank correlation of two equally long samples. Returns 0 when
// either side is constant.
double rank_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace bigrec

#endif  // BIGREC_SIMILARITY_HPP_
