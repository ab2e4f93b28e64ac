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

#include "bigrec/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "bigrec/errors.hpp"

namespace bigrec {
namespace {

constexpr std::string_view kMagic = "bigrec-graph 1";

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

template <typename T>
T parse_field(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

void write_graph(const Bigraph& graph, std::ostream& out) {
  out << "# " << kMagic << '\n';
  if (graph.params()) {
    for (const auto& [key, value] : to_key_values(*graph.params())) {
      out << "# " << key << '=' << value << '\n';
    }
  }
  out << "# users=" << graph.num_users() << '\n';
  out << "# items=" << graph.num_items() << '\n';
  for (const Edge& edge : graph.edges()) {
    out << "U\t" << edge.user << '\t' << edge.item << '\t' << edge.rating << '\n';
  }
  for (const Edge& edge : graph.holdout_edges()) {
    out << "H\t" << edge.user << '\t' << edge.item << '\t' << edge.rating << '\n';
  }
}

void write_graph(const Bigraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_graph(graph, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Bigraph read_graph(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<Edge> holdout;
  GeneratorParams params;
  std::size_t param_keys = 0;
  std::optional<std::size_t> users;
  std::optional<std::size_t> items;
  std::size_t max_user = 0;
  std::size_t max_item = 0;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view body = trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, eq));
      const std::string_view value = trim(body.substr(eq + 1));
      try {
        if (key == "users") {
          users = parse_unsigned(key, value);
        } else if (key == "items") {
          items = parse_unsigned(key, value);
        } else if (set_param(params, key, value)) {
          ++param_keys;
        }
      } catch (const ValidationError& error) {
        throw ParseError(line, error.what());
      }
      continue;
    }

    std::string_view fields[4];
    std::size_t count = 0;
    std::string_view rest = text;
    while (!rest.empty()) {
      const auto split = rest.find_first_of(" \t");
      if (count == 4) throw ParseError(line, "expected 4 fields");
      fields[count++] = rest.substr(0, split);
      if (split == std::string_view::npos) break;
      rest = trim(rest.substr(split));
    }
    if (count != 4) throw ParseError(line, "expected 4 fields");
    if (fields[0] != "U" && fields[0] != "H") {
      throw ParseError(line, "record type must be U or H, got '" + std::string(fields[0]) + "'");
    }
    const Edge edge{parse_field<std::uint32_t>(fields[1], line, "user id"),
                    parse_field<std::uint32_t>(fields[2], line, "item id"),
                    parse_field<int>(fields[3], line, "rating")};
    max_user = std::max<std::size_t>(max_user, edge.user);
    max_item = std::max<std::size_t>(max_item, edge.item);
    (fields[0] == "U" ? edges : holdout).push_back(edge);
  }

  if (edges.empty()) throw ParseError(0, "graph has no training edges");
  const std::size_t num_users = std::max(users.value_or(0), max_user + 1);
  const std::size_t num_items = std::max(items.value_or(0), max_item + 1);
  std::optional<GeneratorParams> stored;
  if (param_keys == to_key_values(params).size()) stored = params;
  try {
    return Bigraph(num_users, num_items, std::move(edges), std::move(holdout),
                   std::move(stored));
  } catch (const ValidationError& error) {
    throw ParseError(0, error.what());
  }
}

Bigraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return read_graph(in);
}

}  // namespace bigrec
