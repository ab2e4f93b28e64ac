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

#ifndef BIGREC_BENCH_HPP_
#define BIGREC_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bigrec/bigraph.hpp"
#include "bigrec/graph_stats.hpp"
#include "bigrec/params.hpp"
#include "bigrec/recommender.hpp"

namespace bigrec::bench {

struct LatencyStats {
  std::size_t sample_size = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
};

// One (graph, config, repetition) observation.
struct BenchRecord {
  std::string suite;
  std::size_t graph_index = 0;
  std::string graph_id;  // hex digest of the generator parameters
  GeneratorParams params;
  stats::GraphSummary summary;
  RecommenderConfig config;
  std::size_t repetition = 0;
  std::size_t memory_bytes = 0;
  std::size_t update_batch = 0;
  double build_ms = 0.0;
  LatencyStats latency;
  double update_ms = 0.0;
};

struct Scenario {
  std::string name;
  // Generator parameter names the aggregate table is keyed by, e.g. {"T"}.
  std::vector<std::string> variables;
  std::vector<GeneratorParams> graphs;
  std::vector<RecommenderConfig> configs;
  std::size_t latency_sample_size = 500;
  std::size_t update_batch_size = 100;
  std::size_t repetitions = 3;
  // Seeds the latency user sample; shared by every cell of a graph.
  std::uint64_t seed = 1;

  // Throws ValidationError; checks that every graph's holdout iterations
  // can supply update_batch_size ratings.
  void validate() const;
};

struct RunOptions {
  std::filesystem::path cache_dir = "graphs";
  // One cell at a time; otherwise cells spread over OpenMP threads.
  bool sequential = false;
  // Fan recommend() calls of one latency sample across threads. Only used
  // in sequential mode.
  bool fan_out_latency = false;
  std::uint32_t warmup = 0;
};

struct CellFailure {
  std::size_t graph_index = 0;
  std::size_t config_index = 0;
  std::size_t repetition = 0;
  std::string message;
};

struct ScenarioResult {
  std::vector<BenchRecord> records;  // cell order: graph, config, repetition
  std::vector<CellFailure> failures;
};

struct BuildMeasurement {
  std::unique_ptr<Recommender> model;
  std::shared_ptr<const Bigraph> graph;
  double build_ms = 0.0;
};

// Wall-clock span of read_graph + build.
BuildMeasurement measure_build(const RecommenderConfig& config,
                               const std::filesystem::path& graph_file);

// `sample_size` distinct users drawn uniformly from the data model with a
// partial Fisher-Yates shuffle driven by Rng(seed); all users, ascending,
// when sample_size >= num_users.
std::vector<std::uint32_t> sample_users(std::size_t num_users, std::size_t sample_size,
                                        std::uint64_t seed);

// Nearest-rank percentiles and the mean of per-call times.
LatencyStats latency_stats(std::vector<double> samples_ms);

LatencyStats measure_latency(const Recommender& model, std::span<const std::uint32_t> users,
                             std::size_t top_n, bool fan_out = false, std::uint32_t warmup = 0);

// Times one update() with the first batch_size holdout ratings. Throws
// ValidationError when the holdout is too small.
double measure_update(Recommender& model, std::span<const Edge> holdout, std::size_t batch_size);

// Graph file for `params` under cache_dir, generated on first use.
std::filesystem::path cached_graph(const GeneratorParams& params,
                                   const std::filesystem::path& cache_dir);

std::string graph_id(const GeneratorParams& params);

// Runs every cell; a failing cell is reported and the run continues.
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options);

// ---- built-in suites -------------------------------------------------------

// Iterations of the reference graph at scale 1.
inline constexpr std::uint32_t kDeskIterations = 2000;
// Scale that turns kDeskIterations into the 10 000-iteration setting.
inline constexpr double kPaperScale = 5.0;

// scalability, density, proportion, clustering, shapes, similarity,
// neighborhood. `scale` multiplies every iteration count.
std::vector<Scenario> builtin_suites(double scale = 1.0);
std::vector<std::string> builtin_suite_names();
// Throws ValidationError for an unknown name.
Scenario builtin_suite(const std::string& name, double scale = 1.0);

// The six algorithms with the reference hyperparameters.
std::vector<RecommenderConfig> default_algorithms();

// ---- scenario files --------------------------------------------------------

// Line-oriented `key = value` file. Top-level keys: name, variables
// (comma list), latency_sample_size, update_batch_size, repetitions, seed.
// Each `[graph]` section is one GeneratorParams (keys as in graph headers);
// each `[algorithm]` section is one RecommenderConfig (algo, similarity,
// neighborhood, threshold, knn_k, factors, iterations, learning_rate,
// regularization, top_n, seed). `#` starts a comment.
Scenario parse_scenario(std::istream& in);
Scenario read_scenario(const std::filesystem::path& path);

// ---- export ----------------------------------------------------------------

// Column names of records.csv, in order.
const std::vector<std::string>& record_columns();
// The subset of record_columns() that holds wall-clock measurements.
const std::vector<std::string>& timing_columns();

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out);
std::vector<BenchRecord> read_records_csv(std::istream& in);

// Mean over repetitions, one row per (graph, config label), keyed by the
// suite's variables. Includes a log_y hint column (1 for scalability).
void write_aggregate_csv(std::span<const BenchRecord> records,
                         const std::vector<std::string>& variables, std::ostream& out);

// records.csv, aggregate_<suite>.csv and failures.log under out_dir.
void export_results(const Scenario& scenario, const ScenarioResult& result,
                    const std::filesystem::path& out_dir);

}  // namespace bigrec::bench

#endif  // BIGREC_BENCH_HPP_
