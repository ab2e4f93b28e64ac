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

#include "bigrec/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "bigrec/errors.hpp"
#include "bigrec/generator.hpp"
#include "bigrec/graph_io.hpp"
#include "bigrec/rng.hpp"

namespace bigrec::bench {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start, Clock::time_point stop) {
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

void Scenario::validate() const {
  if (graphs.empty()) throw ValidationError("graphs", "scenario has no graphs");
  if (configs.empty()) throw ValidationError("algorithms", "scenario has no algorithms");
  if (repetitions < 1) throw ValidationError("repetitions", "must be at least 1");
  for (const GeneratorParams& params : graphs) {
    params.validate();
    const std::size_t guaranteed =
        std::size_t{params.holdout_steps} * std::min(params.u, params.v);
    if (guaranteed < update_batch_size) {
      throw ValidationError("update_batch_size",
                            "holdout of graph " + graph_id(params) + " supplies at most " +
                                std::to_string(guaranteed) + " guaranteed ratings, need " +
                                std::to_string(update_batch_size));
    }
  }
  for (const RecommenderConfig& config : configs) config.validate();
}

std::string graph_id(const GeneratorParams& params) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(params_hash(params)));
  return buffer;
}

BuildMeasurement measure_build(const RecommenderConfig& config,
                               const std::filesystem::path& graph_file) {
  BuildMeasurement result;
  const auto start = Clock::now();
  auto graph = std::make_shared<const Bigraph>(read_graph(graph_file));
  result.model = build(config, RatingDataModel::from_graph(*graph));
  const auto stop = Clock::now();
  result.graph = std::move(graph);
  result.build_ms = elapsed_ms(start, stop);
  return result;
}

std::vector<std::uint32_t> sample_users(std::size_t num_users, std::size_t sample_size,
                                        std::uint64_t seed) {
  std::vector<std::uint32_t> pool(num_users);
  std::iota(pool.begin(), pool.end(), std::uint32_t{0});
  if (sample_size >= num_users) return pool;
  Rng rng(seed);
  for (std::size_t k = 0; k < sample_size; ++k) {
    const std::size_t pick = k + rng.index(num_users - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(sample_size);
  return pool;
}

LatencyStats latency_stats(std::vector<double> samples_ms) {
  LatencyStats stats;
  stats.sample_size = samples_ms.size();
  if (samples_ms.empty()) return stats;
  double total = 0.0;
  for (const double sample : samples_ms) total += sample;
  stats.mean_ms = total / static_cast<double>(samples_ms.size());
  std::sort(samples_ms.begin(), samples_ms.end());
  auto rank = [&](double percent) {
    const auto n = static_cast<double>(samples_ms.size());
    auto position = static_cast<std::size_t>(std::ceil(percent / 100.0 * n));
    position = std::clamp<std::size_t>(position, 1, samples_ms.size());
    return samples_ms[position - 1];
  };
  stats.p50_ms = rank(50.0);
  stats.p90_ms = rank(90.0);
  stats.p99_ms = rank(99.0);
  return stats;
}

LatencyStats measure_latency(const Recommender& model, std::span<const std::uint32_t> users,
                             std::size_t top_n, bool fan_out, std::uint32_t warmup) {
  const std::size_t warm = std::min<std::size_t>(warmup, users.size());
  for (std::size_t k = 0; k < warm; ++k) (void)model.recommend(users[k], top_n);

  const auto count = static_cast<std::int64_t>(users.size());
  std::vector<double> samples(users.size());
#pragma omp parallel for schedule(dynamic, 4) if (fan_out)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto start = Clock::now();
    const Recommendation result = model.recommend(users[static_cast<std::size_t>(k)], top_n);
    const auto stop = Clock::now();
    samples[static_cast<std::size_t>(k)] = elapsed_ms(start, stop);
    (void)result;
  }
  return latency_stats(std::move(samples));
}

double measure_update(Recommender& model, std::span<const Edge> holdout, std::size_t batch_size) {
  if (holdout.size() < batch_size) {
    throw ValidationError("update_batch_size", "holdout has " + std::to_string(holdout.size()) +
                                                   " ratings, need " +
                                                   std::to_string(batch_size));
  }
  const auto batch = holdout.first(batch_size);
  const auto start = Clock::now();
  model.update(batch);
  const auto stop = Clock::now();
  return elapsed_ms(start, stop);
}

std::filesystem::path cached_graph(const GeneratorParams& params,
                                   const std::filesystem::path& cache_dir) {
  namespace fs = std::filesystem;
  const fs::path path = cache_dir / ("graph-" + graph_id(params) + ".tsv");
  if (fs::exists(path)) return path;
  fs::create_directories(cache_dir);
  std::ostringstream suffix;
  suffix << ".tmp-" << std::this_thread::get_id();
  const fs::path temporary = path.string() + suffix.str();
  write_graph(generate(params), temporary);
  fs::rename(temporary, path);
  return path;
}

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const std::size_t num_graphs = scenario.graphs.size();
  const std::size_t num_configs = scenario.configs.size();
  const bool concurrent = !options.sequential;

  std::vector<std::filesystem::path> paths(num_graphs);
  std::vector<stats::GraphSummary> summaries(num_graphs);
  std::vector<std::string> graph_errors(num_graphs);
#pragma omp parallel for schedule(dynamic) if (concurrent)
  for (std::int64_t g = 0; g < static_cast<std::int64_t>(num_graphs); ++g) {
    const auto index = static_cast<std::size_t>(g);
    try {
      paths[index] = cached_graph(scenario.graphs[index], options.cache_dir);
      summaries[index] = stats::summarize(read_graph(paths[index]));
    } catch (const std::exception& error) {
      graph_errors[index] = std::string("graph preparation failed: ") + error.what();
    }
  }

  const std::size_t cells = num_graphs * num_configs * scenario.repetitions;
  std::vector<std::optional<BenchRecord>> records(cells);
  std::vector<std::optional<CellFailure>> failures(cells);
#pragma omp parallel for schedule(dynamic) if (concurrent)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cells); ++c) {
    const auto cell = static_cast<std::size_t>(c);
    const std::size_t g = cell / (num_configs * scenario.repetitions);
    const std::size_t k = (cell / scenario.repetitions) % num_configs;
    const std::size_t r = cell % scenario.repetitions;
    if (!graph_errors[g].empty()) {
      failures[cell] = CellFailure{g, k, r, graph_errors[g]};
      continue;
    }
    try {
      const RecommenderConfig& config = scenario.configs[k];
      BenchRecord record;
      record.suite = scenario.name;
      record.graph_index = g;
      record.graph_id = graph_id(scenario.graphs[g]);
      record.params = scenario.graphs[g];
      record.summary = summaries[g];
      record.config = config;
      record.repetition = r;
      record.update_batch = scenario.update_batch_size;

      BuildMeasurement built = measure_build(config, paths[g]);
      record.build_ms = built.build_ms;
      record.memory_bytes = built.model->footprint_bytes();
      // Users created by holdout iterations have no ratings yet.
      const auto users =
          sample_users(summaries[g].users, scenario.latency_sample_size, scenario.seed);
      record.latency = measure_latency(*built.model, users, config.top_n,
                                       options.fan_out_latency && !concurrent, options.warmup);
      record.update_ms =
          measure_update(*built.model, built.graph->holdout_edges(), scenario.update_batch_size);
      records[cell] = std::move(record);
    } catch (const std::exception& error) {
      failures[cell] = CellFailure{g, k, r, error.what()};
    }
  }

  ScenarioResult result;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (records[cell]) result.records.push_back(std::move(*records[cell]));
    if (failures[cell]) result.failures.push_back(std::move(*failures[cell]));
  }
  return result;
}

}  // namespace bigrec::bench
