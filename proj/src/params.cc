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

#include "bigrec/params.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "bigrec/errors.hpp"

namespace bigrec {
namespace {

void check_probability(const char* field, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(field, "must be a probability in [0, 1], got " + format_real(value));
  }
}

std::string join_ratings(const std::vector<int>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

std::vector<int> split_ratings(std::string_view text) {
  std::vector<int> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ValidationError("rating_values", "not an integer list: " + std::string(text));
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

}  // namespace

void GeneratorParams::validate() const {
  if (m < 1) throw ValidationError("m", "must be at least 1");
  if (u < 1) throw ValidationError("u", "must be at least 1");
  if (v < 1) throw ValidationError("v", "must be at least 1");
  check_probability("p", p);
  check_probability("alpha", alpha);
  check_probability("beta", beta);
  check_probability("b", b);
  if (rating_values.empty()) throw ValidationError("rating_values", "must not be empty");
}

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

double parse_real(std::string_view field, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ValidationError(std::string(field), "not a real number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view field, std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(std::string(field),
                          "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const GeneratorParams& params) {
  return {
      {"m", std::to_string(params.m)},
      {"T", std::to_string(params.T)},
      {"p", format_real(params.p)},
      {"u", std::to_string(params.u)},
      {"v", std::to_string(params.v)},
      {"alpha", format_real(params.alpha)},
      {"beta", format_real(params.beta)},
      {"b", format_real(params.b)},
      {"seed", std::to_string(params.seed)},
      {"holdout_steps", std::to_string(params.holdout_steps)},
      {"rating_values", join_ratings(params.rating_values)},
  };
}

bool set_param(GeneratorParams& params, std::string_view key, std::string_view value) {
  auto as_u32 = [&](std::string_view field) {
    const std::uint64_t parsed = parse_unsigned(field, value);
    if (parsed > std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError(std::string(field), "value too large");
    }
    return static_cast<std::uint32_t>(parsed);
  };
  if (key == "m") {
    params.m = as_u32(key);
  } else if (key == "T") {
    params.T = as_u32(key);
  } else if (key == "p") {
    params.p = parse_real(key, value);
  } else if (key == "u") {
    params.u = as_u32(key);
  } else if (key == "v") {
    params.v = as_u32(key);
  } else if (key == "alpha") {
    params.alpha = parse_real(key, value);
  } else if (key == "beta") {
    params.beta = parse_real(key, value);
  } else if (key == "b") {
    params.b = parse_real(key, value);
  } else if (key == "seed") {
    params.seed = parse_unsigned(key, value);
  } else if (key == "holdout_steps") {
    params.holdout_steps = as_u32(key);
  } else if (key == "rating_values") {
    params.rating_values = split_ratings(value);
  } else {
    return false;
  }
  return true;
}

std::uint64_t params_hash(const GeneratorParams& params) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::string_view text) {
    for (const char c : text) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
  };
  for (const auto& [key, value] : to_key_values(params)) {
    mix(key);
    mix("=");
    mix(value);
    mix(";");
  }
  return hash;
}

}  // namespace bigrec
