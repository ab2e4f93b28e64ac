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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include "bigrec/bench.hpp"
#include "bigrec/errors.hpp"
#include "bigrec/generator.hpp"
#include "bigrec/graph_io.hpp"
#include "bigrec/graph_stats.hpp"
#include "bigrec/params.hpp"
#include "bigrec/rating_data.hpp"
#include "bigrec/recommender.hpp"

namespace bigrec::cli {
namespace {

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "random") {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }
  return parse_unsigned("seed", text);
}

void print_summary(const stats::GraphSummary& s, std::ostream& out) {
  out << "users=" << s.users << " items=" << s.items << " edges=" << s.edges
      << " mean_user_degree=" << format_real(s.mean_user_degree)
      << " mean_item_degree=" << format_real(s.mean_item_degree)
      << " mean_blcc=" << format_real(s.mean_blcc)
      << " mean_neighbors=" << format_real(s.mean_neighbors)
      << " mean_second_items=" << format_real(s.mean_second_items)
      << " newman_estimate=" << format_real(s.newman_estimate) << '\n';
}

// One row per graph: generator parameters (blank when the file has none),
// then the summary.
void write_summary_csv(const Bigraph& graph, const stats::GraphSummary& s, std::ostream& out) {
  const auto keys = to_key_values(GeneratorParams{});
  for (const auto& [key, value] : keys) out << key << ',';
  out << "users,items,edges,mean_user_degree,mean_item_degree,mean_blcc,mean_neighbors,"
         "mean_second_items,mean_second_items_total,newman_estimate\n";
  if (graph.params()) {
    for (auto [key, value] : to_key_values(*graph.params())) {
      std::replace(value.begin(), value.end(), ',', ';');
      out << value << ',';
    }
  } else {
    out << std::string(keys.size(), ',');
  }
  out << s.users << ',' << s.items << ',' << s.edges << ',' << format_real(s.mean_user_degree)
      << ',' << format_real(s.mean_item_degree) << ',' << format_real(s.mean_blcc) << ','
      << format_real(s.mean_neighbors) << ',' << format_real(s.mean_second_items) << ','
      << format_real(s.mean_second_items_total) << ',' << format_real(s.newman_estimate) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return file;
}

struct GenerateFlags {
  GeneratorParams params;
  std::string seed = "1";
  std::string ratings = "0,1,2,3,4,5";
  std::string out = "graph.tsv";
};

struct RecommendFlags {
  std::string graph;
  std::uint32_t user = 0;
  std::string algo = "userbased";
  std::string similarity = "pearson";
  RecommenderConfig config;
  double threshold = 0.0;
  std::string seed = "1";
};

struct BenchFlags {
  std::string suite;
  std::string scenario_file;
  double scale = 1.0;
  bool paper_scale = false;
  std::string seed = "1";
  bool sequential = false;
  std::string out = "bench-out";
  std::size_t repetitions = 0;
  std::uint32_t warmup = 0;
  std::size_t latency_sample = 0;
  std::vector<std::string> algos;
};

int run_generate(const GenerateFlags& flags, std::ostream& out) {
  GeneratorParams params = flags.params;
  params.seed = resolve_seed(flags.seed);
  set_param(params, "rating_values", flags.ratings);
  params.validate();
  const Bigraph graph = generate(params);
  write_graph(graph, std::filesystem::path(flags.out));
  out << "wrote " << flags.out << " seed=" << params.seed << '\n';
  print_summary(stats::summarize(graph), out);
  return kOk;
}

int run_stats(const std::string& graph_file, const std::string& csv_file, std::ostream& out) {
  const Bigraph graph = read_graph(std::filesystem::path(graph_file));
  const stats::GraphSummary summary = stats::summarize(graph);
  if (csv_file.empty()) {
    write_summary_csv(graph, summary, out);
  } else {
    auto file = open_output(csv_file);
    write_summary_csv(graph, summary, file);
    print_summary(summary, out);
  }
  return kOk;
}

int run_recommend(const RecommendFlags& flags, bool has_threshold, std::ostream& out,
                  std::ostream& err) {
  RecommenderConfig config = flags.config;
  const auto algorithm = parse_algorithm(flags.algo);
  if (!algorithm) throw ValidationError("algo", "unknown algorithm '" + flags.algo + "'");
  const auto similarity = parse_similarity(flags.similarity);
  if (!similarity) {
    throw ValidationError("similarity", "unknown similarity '" + flags.similarity + "'");
  }
  config.algorithm = *algorithm;
  config.similarity = *similarity;
  if (has_threshold) config.threshold = flags.threshold;
  config.seed = resolve_seed(flags.seed);
  config.validate();

  const Bigraph graph = read_graph(std::filesystem::path(flags.graph));
  const auto model = build(config, RatingDataModel::from_graph(graph));
  const Recommendation result = model->recommend(flags.user, config.top_n);
  if (result.unknown_user) err << "warning: unknown user " << flags.user << '\n';
  for (const RecommendedItem& item : result.items) {
    out << item.item << '\t' << format_real(item.estimate) << '\n';
  }
  return kOk;
}

int run_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  const double scale = flags.paper_scale ? bench::kPaperScale : flags.scale;
  if (!(scale > 0.0)) throw ValidationError("scale", "must be positive");
  bench::Scenario scenario = flags.scenario_file.empty()
                                 ? bench::builtin_suite(flags.suite, scale)
                                 : bench::read_scenario(flags.scenario_file);
  const std::uint64_t seed = resolve_seed(flags.seed);
  if (flags.scenario_file.empty()) {
    // Scenario files carry their own seeds.
    scenario.seed = seed;
    for (GeneratorParams& params : scenario.graphs) params.seed = seed;
    for (RecommenderConfig& config : scenario.configs) config.seed = seed;
  }
  if (!flags.algos.empty()) {
    std::vector<RecommenderConfig> kept;
    for (const std::string& name : flags.algos) {
      const auto algorithm = parse_algorithm(name);
      if (!algorithm) throw ValidationError("algos", "unknown algorithm '" + name + "'");
      for (const RecommenderConfig& config : scenario.configs) {
        if (config.algorithm == *algorithm) kept.push_back(config);
      }
    }
    scenario.configs = std::move(kept);
  }
  if (flags.repetitions > 0) scenario.repetitions = flags.repetitions;
  if (flags.latency_sample > 0) scenario.latency_sample_size = flags.latency_sample;
  scenario.validate();

  const std::filesystem::path out_dir(flags.out);
  bench::RunOptions options;
  options.cache_dir = out_dir / "graphs";
  options.sequential = flags.sequential;
  options.warmup = flags.warmup;
  const bench::ScenarioResult result = bench::run_scenario(scenario, options);
  bench::export_results(scenario, result, out_dir);

  out << scenario.name << ": " << result.records.size() << " records, "
      << result.failures.size() << " failed cells, written to " << out_dir.string() << '\n';
  for (const bench::CellFailure& failure : result.failures) {
    err << "cell graph=" << failure.graph_index << " config=" << failure.config_index
        << " repetition=" << failure.repetition << " failed: " << failure.message << '\n';
  }
  return result.failures.empty() ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Random bipartite rating graphs and recommender benchmarks.", "bigrec");
  app.require_subcommand(1);

  // generate
  GenerateFlags gen;
  auto* generate_cmd = app.add_subcommand("generate", "Grow a random rating graph");
  generate_cmd->add_option("--m", gen.params.m, "Initial disjoint user-item pairs")
      ->capture_default_str();
  generate_cmd->add_option("--T", gen.params.T, "Growth iterations")->capture_default_str();
  generate_cmd->add_option("--p", gen.params.p, "Probability that an iteration adds a user")
      ->capture_default_str();
  generate_cmd->add_option("--u", gen.params.u, "Edges per new user")->capture_default_str();
  generate_cmd->add_option("--v", gen.params.v, "Edges per new item")->capture_default_str();
  generate_cmd->add_option("--alpha", gen.params.alpha,
                           "Preferential share of new-user edges")
      ->capture_default_str();
  generate_cmd->add_option("--beta", gen.params.beta, "Preferential share of new-item edges")
      ->capture_default_str();
  generate_cmd->add_option("--b", gen.params.b, "Bounce probability of preferential edges")
      ->capture_default_str();
  generate_cmd->add_option("--holdout", gen.params.holdout_steps,
                           "Extra iterations whose edges form the update batch")
      ->capture_default_str();
  generate_cmd->add_option("--ratings", gen.ratings, "Comma-separated rating values")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "Unsigned seed or 'random'")
      ->capture_default_str();
  generate_cmd->add_option("--out", gen.out, "Output graph file")->capture_default_str();

  // stats
  std::string stats_graph;
  std::string stats_csv;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize a graph file as CSV");
  stats_cmd->add_option("--graph", stats_graph, "Graph file")->required();
  stats_cmd->add_option("--csv", stats_csv, "Write the CSV here instead of stdout");

  // recommend
  RecommendFlags rec;
  auto* recommend_cmd = app.add_subcommand("recommend", "Top-N items for one user");
  recommend_cmd->add_option("--graph", rec.graph, "Graph file")->required();
  recommend_cmd->add_option("--user", rec.user, "User id")->capture_default_str();
  recommend_cmd->add_option("--algo", rec.algo,
                            "userbased|itembased|slopeone|userthreshold|knnitem|svd")
      ->capture_default_str();
  recommend_cmd->add_option("--similarity", rec.similarity,
                            "pearson|euclidean|loglikelihood|spearman|tanimoto")
      ->capture_default_str();
  recommend_cmd->add_option("--neighborhood", rec.config.neighborhood_size,
                            "Most similar users consulted by userbased")
      ->capture_default_str();
  auto* threshold_opt = recommend_cmd->add_option(
      "--threshold", rec.threshold, "Similarity cut-off, required by userthreshold");
  recommend_cmd->add_option("--knn-k", rec.config.knn_k, "Neighbors per item for knnitem")
      ->capture_default_str();
  recommend_cmd->add_option("--factors", rec.config.factors, "Latent factors for svd")
      ->capture_default_str();
  recommend_cmd->add_option("--iterations", rec.config.training_iterations,
                            "Training epochs for svd")
      ->capture_default_str();
  recommend_cmd->add_option("--top-n", rec.config.top_n, "List length")->capture_default_str();
  recommend_cmd->add_option("--seed", rec.seed, "Unsigned seed or 'random'")
      ->capture_default_str();

  // bench
  BenchFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark scenario");
  bench_cmd->require_subcommand(1);
  auto* suite_cmd = bench_cmd->add_subcommand("suite", "Run a built-in suite");
  suite_cmd->add_option("name", bf.suite,
                        "scalability|density|proportion|clustering|shapes|similarity|neighborhood")
      ->required();
  auto* scale_opt =
      suite_cmd->add_option("--scale", bf.scale, "Iteration-count multiplier")
          ->capture_default_str();
  suite_cmd->add_flag("--paper-scale", bf.paper_scale, "Use 10000 reference iterations")
      ->excludes(scale_opt);
  suite_cmd->add_option("--seed", bf.seed, "Unsigned seed or 'random'")->capture_default_str();
  auto* custom_cmd = bench_cmd->add_subcommand("custom", "Run a scenario file");
  custom_cmd->add_option("file", bf.scenario_file, "Scenario file")->required();
  for (CLI::App* cmd : {suite_cmd, custom_cmd}) {
    cmd->add_flag("--sequential", bf.sequential, "Run one cell at a time");
    cmd->add_option("--out", bf.out, "Output directory")->capture_default_str();
    cmd->add_option("--reps", bf.repetitions, "Override repetitions per cell");
    cmd->add_option("--warmup", bf.warmup, "Untimed recommend calls before each latency sample")
        ->capture_default_str();
    cmd->add_option("--latency-sample", bf.latency_sample, "Override users per latency sample");
    cmd->add_option("--algos", bf.algos, "Keep only these algorithms")->delimiter(',');
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    return app.exit(error, out, err) == 0 ? kOk : kInvalid;
  }

  try {
    if (generate_cmd->parsed()) return run_generate(gen, out);
    if (stats_cmd->parsed()) return run_stats(stats_graph, stats_csv, out);
    if (recommend_cmd->parsed()) {
      return run_recommend(rec, threshold_opt->count() > 0, out, err);
    }
    return run_bench(bf, out, err);
  } catch (const ValidationError& error) {
    err << "error: invalid " << error.what() << '\n';
    return kInvalid;
  } catch (const ParseError& error) {
    err << "error: malformed input: " << error.what() << '\n';
    return kInvalid;
  } catch (const std::exception& error) {
    err << "error: " << error.what() << '\n';
    return kFailed;
  }
}

}  // namespace bigrec::cli
