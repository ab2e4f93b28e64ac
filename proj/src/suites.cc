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

#include <cmath>

#include "bigrec/bench.hpp"
#include "bigrec/errors.hpp"

namespace bigrec::bench {
namespace {

// Threshold used for UserThreshold in the built-in suites.
constexpr double kSuiteThreshold = 0.5;

std::uint32_t scaled(double iterations, double scale) {
  return static_cast<std::uint32_t>(std::max(1.0, std::round(iterations * scale)));
}

GeneratorParams reference_graph(double scale) {
  GeneratorParams params;
  params.m = 100;
  params.T = scaled(kDeskIterations, scale);
  params.p = 0.5;
  params.u = 7;
  params.v = 7;
  params.alpha = 0.5;
  params.beta = 0.5;
  params.b = 0.2;
  return params;
}

Scenario named(std::string name, std::vector<std::string> variables) {
  Scenario s;
  s.name = std::move(name);
  s.variables = std::move(variables);
  return s;
}

Scenario scalability(double scale) {
  Scenario s = named("scalability", {"T"});
  for (const double fraction : {0.125, 0.25, 0.5, 1.0, 2.0}) {
    GeneratorParams params = reference_graph(scale);
    params.T = scaled(kDeskIterations * fraction, scale);
    s.graphs.push_back(params);
  }
  s.configs = default_algorithms();
  return s;
}

Scenario density(double scale) {
  Scenario s = named("density", {"u", "v"});
  const std::pair<std::uint32_t, std::uint32_t> shapes[] = {
      {3, 3}, {6, 6},  {12, 12}, {24, 24}, {3, 4},  {4, 3},  {3, 6},
      {6, 3}, {3, 9},  {9, 3},   {3, 12},  {12, 3}, {3, 15}, {15, 3}};
  for (const auto& [u, v] : shapes) {
    GeneratorParams params = reference_graph(scale);
    params.u = u;
    params.v = v;
    s.graphs.push_back(params);
  }
  s.configs = default_algorithms();
  return s;
}

Scenario proportion(double scale) {
  Scenario s = named("proportion", {"p"});
  for (int k = 1; k <= 9; ++k) {
    GeneratorParams params = reference_graph(scale);
    params.p = k / 10.0;
    s.graphs.push_back(params);
  }
  s.configs = default_algorithms();
  return s;
}

Scenario clustering(double scale) {
  Scenario s = named("clustering", {"b"});
  for (int k = 0; k <= 10; ++k) {
    GeneratorParams params = reference_graph(scale);
    params.u = 12;
    params.v = 12;
    params.alpha = 0.8;
    params.beta = 0.8;
    params.b = k / 10.0;
    s.graphs.push_back(params);
  }
  s.configs = default_algorithms();
  return s;
}

Scenario shapes(double scale) {
  Scenario s = named("shapes", {"alpha", "beta"});
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      GeneratorParams params = reference_graph(scale);
      params.alpha = a / 5.0;
      params.beta = b / 5.0;
      s.graphs.push_back(params);
    }
  }
  s.configs = default_algorithms();
  return s;
}

std::vector<GeneratorParams> uniform_density_graphs(double scale) {
  std::vector<GeneratorParams> graphs;
  for (const std::uint32_t edges : {3u, 6u, 12u, 24u}) {
    GeneratorParams params = reference_graph(scale);
    params.u = edges;
    params.v = edges;
    graphs.push_back(params);
  }
  return graphs;
}

Scenario similarity_suite(double scale) {
  Scenario s = named("similarity", {"u", "v"});
  s.graphs = uniform_density_graphs(scale);
  for (const SimilarityKind kind : kAllSimilarityKinds) {
    RecommenderConfig config;
    config.similarity = kind;
    s.configs.push_back(config);
  }
  return s;
}

Scenario neighborhood_suite(double scale) {
  Scenario s = named("neighborhood", {"u", "v"});
  s.graphs = uniform_density_graphs(scale);
  for (const std::uint32_t size : {25u, 50u, 100u, 200u}) {
    RecommenderConfig config;
    config.neighborhood_size = size;
    s.configs.push_back(config);
  }
  return s;
}

}  // namespace

std::vector<RecommenderConfig> default_algorithms() {
  std::vector<RecommenderConfig> configs;
  for (const Algorithm algorithm : kAllAlgorithms) {
    RecommenderConfig config;
    config.algorithm = algorithm;
    if (algorithm == Algorithm::kUserThreshold) config.threshold = kSuiteThreshold;
    configs.push_back(config);
  }
  return configs;
}

std::vector<Scenario> builtin_suites(double scale) {
  if (!(scale > 0.0)) throw ValidationError("scale", "must be positive");
  return {scalability(scale), density(scale),          proportion(scale),
          clustering(scale),  shapes(scale),           similarity_suite(scale),
          neighborhood_suite(scale)};
}

std::vector<std::string> builtin_suite_names() {
  return {"scalability", "density", "proportion", "clustering",
          "shapes",      "similarity", "neighborhood"};
}

Scenario builtin_suite(const std::string& name, double scale) {
  for (Scenario& scenario : builtin_suites(scale)) {
    if (scenario.name == name) return std::move(scenario);
  }
  throw ValidationError("suite", "unknown suite '" + name + "'");
}

}  // namespace bigrec::bench
