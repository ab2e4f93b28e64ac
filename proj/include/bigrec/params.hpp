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

#ifndef BIGREC_PARAMS_HPP_
#define BIGREC_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bigrec {

// The eight parameters of the bipartite growth model, plus the knobs that
// control reproducibility (seed) and the update set (holdout_steps).
struct GeneratorParams {
  std::uint32_t m = 100;           // initial loose user-item edges
  std::uint32_t T = 2000;          // growth iterations
  double p = 0.5;                  // probability that a new node is a user
  std::uint32_t u = 7;             // edges per new user
  std::uint32_t v = 7;             // edges per new item
  double alpha = 0.5;              // preferential share of user edges
  double beta = 0.5;               // preferential share of item edges
  double b = 0.0;                  // bounced share of preferential edges
  std::uint64_t seed = 1;
  std::uint32_t holdout_steps = 100;
  std::vector<int> rating_values{0, 1, 2, 3, 4, 5};

  // Throws ValidationError naming the first offending field.
  void validate() const;

  // Expected edges added per iteration: p*u + (1-p)*v.
  double eta() const { return p * u + (1.0 - p) * v; }

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

// Ordered (key, value) pairs; the textual form used in graph file headers,
// CSV columns and scenario files. Reals use the shortest round-trip form.
std::vector<std::pair<std::string, std::string>> to_key_values(const GeneratorParams& params);

// Applies one key/value to `params`. Returns false for unknown keys, throws
// ValidationError on a malformed value.
bool set_param(GeneratorParams& params, std::string_view key, std::string_view value);

// Stable 64-bit FNV-1a digest of to_key_values(); keys the graph cache.
std::uint64_t params_hash(const GeneratorParams& params);

// Shortest round-trip decimal form of a double.
std::string format_real(double value);

double parse_real(std::string_view field, std::string_view text);
std::uint64_t parse_unsigned(std::string_view field, std::string_view text);

}  // namespace bigrec

#endif  // BIGREC_PARAMS_HPP_
