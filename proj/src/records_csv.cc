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

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "bigrec/bench.hpp"
#include "bigrec/errors.hpp"

namespace bigrec::bench {
namespace {

struct Column {
  std::string name;
  std::function<std::string(const BenchRecord&)> get;
  std::function<void(BenchRecord&, std::string_view)> set;
  bool timing = false;
};

std::size_t to_size(std::string_view field, std::string_view text) {
  return static_cast<std::size_t>(parse_unsigned(field, text));
}

// Generator parameter columns reuse the graph-header encoding, except that
// the rating list is ';'-separated to stay inside one CSV cell.
Column param_column(const std::string& key) {
  return Column{
      key,
      [key](const BenchRecord& r) {
        for (auto [k, v] : to_key_values(r.params)) {
          if (k == key) {
            if (key == "rating_values") std::replace(v.begin(), v.end(), ',', ';');
            return v;
          }
        }
        return std::string();
      },
      [key](BenchRecord& r, std::string_view text) {
        std::string value(text);
        if (key == "rating_values") std::replace(value.begin(), value.end(), ';', ',');
        set_param(r.params, key, value);
      }};
}

template <typename Field>
Column size_column(std::string name, Field field) {
  return Column{name, [field](const BenchRecord& r) { return std::to_string(field(r)); },
                [field, name](BenchRecord& r, std::string_view text) {
                  field(r) = static_cast<std::remove_reference_t<decltype(field(r))>>(
                      to_size(name, text));
                }};
}

template <typename Field>
Column real_column(std::string name, Field field, bool timing = false) {
  return Column{name, [field](const BenchRecord& r) { return format_real(field(r)); },
                [field, name](BenchRecord& r, std::string_view text) {
                  field(r) = parse_real(name, text);
                },
                timing};
}

const std::vector<Column>& columns() {
  static const std::vector<Column> table = [] {
    std::vector<Column> c;
    c.push_back({"suite", [](const BenchRecord& r) { return r.suite; },
                 [](BenchRecord& r, std::string_view t) { r.suite = std::string(t); }});
    c.push_back(size_column("graph_index", [](auto& r) -> auto& { return r.graph_index; }));
    c.push_back({"graph_id", [](const BenchRecord& r) { return r.graph_id; },
                 [](BenchRecord& r, std::string_view t) { r.graph_id = std::string(t); }});
    for (const auto& [key, value] : to_key_values(GeneratorParams{})) {
      c.push_back(param_column(key));
    }
    c.push_back(size_column("users", [](auto& r) -> auto& { return r.summary.users; }));
    c.push_back(size_column("items", [](auto& r) -> auto& { return r.summary.items; }));
    c.push_back(size_column("edges", [](auto& r) -> auto& { return r.summary.edges; }));
    c.push_back(real_column("mean_user_degree",
                            [](auto& r) -> auto& { return r.summary.mean_user_degree; }));
    c.push_back(real_column("mean_item_degree",
                            [](auto& r) -> auto& { return r.summary.mean_item_degree; }));
    c.push_back(real_column("mean_blcc", [](auto& r) -> auto& { return r.summary.mean_blcc; }));
    c.push_back(
        real_column("mean_neighbors", [](auto& r) -> auto& { return r.summary.mean_neighbors; }));
    c.push_back(real_column("mean_second_items",
                            [](auto& r) -> auto& { return r.summary.mean_second_items; }));
    c.push_back(real_column("mean_second_items_total",
                            [](auto& r) -> auto& { return r.summary.mean_second_items_total; }));
    c.push_back(real_column("newman_estimate",
                            [](auto& r) -> auto& { return r.summary.newman_estimate; }));
    c.push_back({"algo",
                 [](const BenchRecord& r) { return std::string(to_string(r.config.algorithm)); },
                 [](BenchRecord& r, std::string_view t) {
                   const auto parsed = parse_algorithm(t);
                   if (!parsed) throw ValidationError("algo", "unknown algorithm");
                   r.config.algorithm = *parsed;
                 }});
    c.push_back({"label", [](const BenchRecord& r) { return config_label(r.config); },
                 [](BenchRecord&, std::string_view) {}});
    c.push_back({"similarity",
                 [](const BenchRecord& r) { return std::string(to_string(r.config.similarity)); },
                 [](BenchRecord& r, std::string_view t) {
                   const auto parsed = parse_similarity(t);
                   if (!parsed) throw ValidationError("similarity", "unknown similarity");
                   r.config.similarity = *parsed;
                 }});
    c.push_back(
        size_column("neighborhood", [](auto& r) -> auto& { return r.config.neighborhood_size; }));
    c.push_back({"threshold",
                 [](const BenchRecord& r) {
                   return r.config.threshold ? format_real(*r.config.threshold) : std::string();
                 },
                 [](BenchRecord& r, std::string_view t) {
                   if (t.empty()) {
                     r.config.threshold.reset();
                   } else {
                     r.config.threshold = parse_real("threshold", t);
                   }
                 }});
    c.push_back(size_column("knn_k", [](auto& r) -> auto& { return r.config.knn_k; }));
    c.push_back(size_column("factors", [](auto& r) -> auto& { return r.config.factors; }));
    c.push_back(
        size_column("iterations", [](auto& r) -> auto& { return r.config.training_iterations; }));
    c.push_back(
        real_column("learning_rate", [](auto& r) -> auto& { return r.config.learning_rate; }));
    c.push_back(
        real_column("regularization", [](auto& r) -> auto& { return r.config.regularization; }));
    c.push_back(size_column("top_n", [](auto& r) -> auto& { return r.config.top_n; }));
    c.push_back(size_column("model_seed", [](auto& r) -> auto& { return r.config.seed; }));
    c.push_back(size_column("repetition", [](auto& r) -> auto& { return r.repetition; }));
    c.push_back(size_column("memory_bytes", [](auto& r) -> auto& { return r.memory_bytes; }));
    c.push_back(size_column("latency_sample_size",
                            [](auto& r) -> auto& { return r.latency.sample_size; }));
    c.push_back(size_column("update_batch", [](auto& r) -> auto& { return r.update_batch; }));
    c.push_back(real_column("build_ms", [](auto& r) -> auto& { return r.build_ms; }, true));
    c.push_back(
        real_column("latency_ms_mean", [](auto& r) -> auto& { return r.latency.mean_ms; }, true));
    c.push_back(
        real_column("latency_ms_p50", [](auto& r) -> auto& { return r.latency.p50_ms; }, true));
    c.push_back(
        real_column("latency_ms_p90", [](auto& r) -> auto& { return r.latency.p90_ms; }, true));
    c.push_back(
        real_column("latency_ms_p99", [](auto& r) -> auto& { return r.latency.p99_ms; }, true));
    c.push_back(real_column("update_ms", [](auto& r) -> auto& { return r.update_ms; }, true));
    return c;
  }();
  return table;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Column& column : columns()) out.push_back(column.name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& timing_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Column& column : columns()) {
      if (column.timing) out.push_back(column.name);
    }
    return out;
  }();
  return names;
}

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out) {
  const auto& table = columns();
  for (std::size_t k = 0; k < table.size(); ++k) out << (k ? "," : "") << table[k].name;
  out << '\n';
  for (const BenchRecord& record : records) {
    for (std::size_t k = 0; k < table.size(); ++k) out << (k ? "," : "") << table[k].get(record);
    out << '\n';
  }
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
  const auto& table = columns();
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(0, "empty records file");
  const auto header = split_csv_line(raw);
  if (header.size() != table.size()) throw ParseError(1, "unexpected column count");
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (header[k] != table[k].name) {
      throw ParseError(1, "expected column '" + table[k].name + "', got '" +
                              std::string(header[k]) + "'");
    }
  }
  std::vector<BenchRecord> records;
  std::size_t line = 1;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty()) continue;
    const auto cells = split_csv_line(raw);
    if (cells.size() != table.size()) throw ParseError(line, "unexpected column count");
    BenchRecord record;
    try {
      for (std::size_t k = 0; k < table.size(); ++k) table[k].set(record, cells[k]);
    } catch (const ValidationError& error) {
      throw ParseError(line, error.what());
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_aggregate_csv(std::span<const BenchRecord> records,
                         const std::vector<std::string>& variables, std::ostream& out) {
  struct Group {
    const BenchRecord* first = nullptr;
    std::size_t count = 0;
    double build_ms = 0.0;
    double memory_bytes = 0.0;
    double latency_ms = 0.0;
    double latency_p50 = 0.0;
    double latency_p90 = 0.0;
    double latency_p99 = 0.0;
    double update_ms = 0.0;
  };
  std::vector<Group> groups;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  for (const BenchRecord& record : records) {
    const auto key = std::make_pair(record.graph_index, config_label(record.config));
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back(Group{&record});
    Group& group = groups[it->second];
    ++group.count;
    group.build_ms += record.build_ms;
    group.memory_bytes += static_cast<double>(record.memory_bytes);
    group.latency_ms += record.latency.mean_ms;
    group.latency_p50 += record.latency.p50_ms;
    group.latency_p90 += record.latency.p90_ms;
    group.latency_p99 += record.latency.p99_ms;
    group.update_ms += record.update_ms;
  }

  for (const std::string& variable : variables) out << variable << ',';
  out << "graph_index,edges,label,repetitions,build_ms,memory_bytes,latency_ms_mean,"
         "latency_ms_p50,latency_ms_p90,latency_ms_p99,update_ms,log_y\n";
  for (const Group& group : groups) {
    const BenchRecord& first = *group.first;
    const auto key_values = to_key_values(first.params);
    for (const std::string& variable : variables) {
      std::string value;
      for (const auto& [k, v] : key_values) {
        if (k == variable) value = v;
      }
      out << value << ',';
    }
    const auto n = static_cast<double>(group.count);
    out << first.graph_index << ',' << first.summary.edges << ',' << config_label(first.config)
        << ',' << group.count << ',' << format_real(group.build_ms / n) << ','
        << format_real(group.memory_bytes / n) << ',' << format_real(group.latency_ms / n) << ','
        << format_real(group.latency_p50 / n) << ',' << format_real(group.latency_p90 / n) << ','
        << format_real(group.latency_p99 / n) << ',' << format_real(group.update_ms / n) << ','
        << (first.suite == "scalability" ? 1 : 0) << '\n';
  }
}

void export_results(const Scenario& scenario, const ScenarioResult& result,
                    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto open = [](const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
  };
  {
    auto out = open(out_dir / "records.csv");
    write_records_csv(result.records, out);
    if (!out.flush()) throw std::runtime_error("write to records.csv failed");
  }
  {
    auto out = open(out_dir / ("aggregate_" + scenario.name + ".csv"));
    write_aggregate_csv(result.records, scenario.variables, out);
    if (!out.flush()) throw std::runtime_error("write to aggregate csv failed");
  }
  {
    auto out = open(out_dir / "failures.log");
    for (const CellFailure& failure : result.failures) {
      out << "graph=" << failure.graph_index << " config=" << failure.config_index
          << " repetition=" << failure.repetition << ": " << failure.message << '\n';
    }
  }
}

}  // namespace bigrec::bench
