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

#include <fstream>
#include <istream>
#include <limits>
#include <string_view>

#include "bigrec/bench.hpp"
#include "bigrec/errors.hpp"

namespace bigrec::bench {
namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::uint32_t as_u32(std::string_view field, std::string_view value) {
  const std::uint64_t parsed = parse_unsigned(field, value);
  if (parsed > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError(std::string(field), "value too large");
  }
  return static_cast<std::uint32_t>(parsed);
}

bool set_config(RecommenderConfig& config, std::string_view key, std::string_view value) {
  if (key == "algo" || key == "algorithm") {
    const auto parsed = parse_algorithm(value);
    if (!parsed) throw ValidationError("algo", "unknown algorithm '" + std::string(value) + "'");
    config.algorithm = *parsed;
  } else if (key == "similarity") {
    const auto parsed = parse_similarity(value);
    if (!parsed) {
      throw ValidationError("similarity", "unknown similarity '" + std::string(value) + "'");
    }
    config.similarity = *parsed;
  } else if (key == "neighborhood") {
    config.neighborhood_size = as_u32(key, value);
  } else if (key == "threshold") {
    config.threshold = parse_real(key, value);
  } else if (key == "knn_k" || key == "knn-k") {
    config.knn_k = as_u32(key, value);
  } else if (key == "factors") {
    config.factors = as_u32(key, value);
  } else if (key == "iterations") {
    config.training_iterations = as_u32(key, value);
  } else if (key == "learning_rate") {
    config.learning_rate = parse_real(key, value);
  } else if (key == "regularization") {
    config.regularization = parse_real(key, value);
  } else if (key == "top_n" || key == "top-n") {
    config.top_n = as_u32(key, value);
  } else if (key == "seed") {
    config.seed = parse_unsigned(key, value);
  } else {
    return false;
  }
  return true;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view token = trim(text.substr(0, comma));
    if (!token.empty()) out.emplace_back(token);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  enum class Section { kTop, kGraph, kAlgorithm };
  Scenario scenario;
  Section section = Section::kTop;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text == "[graph]") {
        section = Section::kGraph;
        scenario.graphs.emplace_back();
      } else if (text == "[algorithm]") {
        section = Section::kAlgorithm;
        scenario.configs.emplace_back();
      } else {
        throw ParseError(line, "unknown section " + std::string(text));
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected key = value");
    const std::string_view key = trim(text.substr(0, eq));
    std::string_view value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      bool known = false;
      switch (section) {
        case Section::kTop:
          known = true;
          if (key == "name") {
            scenario.name = std::string(value);
          } else if (key == "variables") {
            scenario.variables = split_list(value);
          } else if (key == "latency_sample_size") {
            scenario.latency_sample_size = parse_unsigned(key, value);
          } else if (key == "update_batch_size") {
            scenario.update_batch_size = parse_unsigned(key, value);
          } else if (key == "repetitions") {
            scenario.repetitions = parse_unsigned(key, value);
          } else if (key == "seed") {
            scenario.seed = parse_unsigned(key, value);
          } else {
            known = false;
          }
          break;
        case Section::kGraph:
          known = set_param(scenario.graphs.back(), key, value);
          break;
        case Section::kAlgorithm:
          known = set_config(scenario.configs.back(), key, value);
          break;
      }
      if (!known) throw ParseError(line, "unknown key '" + std::string(key) + "'");
    } catch (const ValidationError& error) {
      throw ParseError(line, error.what());
    }
  }
  if (scenario.name.empty()) scenario.name = "custom";
  return scenario;
}

Scenario read_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  return parse_scenario(in);
}

}  // namespace bigrec::bench
