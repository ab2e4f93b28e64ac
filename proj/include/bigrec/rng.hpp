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

#ifndef BIGREC_RNG_HPP_
#define BIGREC_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace bigrec {

// Seedable random stream with a fixed, documented mapping from the raw
// mt19937_64 output to the derived draws. Every derived draw consumes
// whole 64-bit words, so any sequence of calls can be replayed exactly
// from the seed by re-implementing the three rules below:
//
//   uniform()   : (word >> 11) * 2^-53, a double in [0, 1).
//   bernoulli(p): uniform() < p.
//   index(n)    : rejection sampling; redraw while word < (2^64 mod n),
//                 then return word mod n.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double probability) { return uniform() < probability; }

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  // Uniform real in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bigrec

#endif  // BIGREC_RNG_HPP_
