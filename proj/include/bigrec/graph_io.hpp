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

#ifndef BIGREC_GRAPH_IO_HPP_
#define BIGREC_GRAPH_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "bigrec/bigraph.hpp"

namespace bigrec {

// Text format, one record per line:
//
//   # bigrec-graph 1
//   # <key>=<value>          generator parameters, users=, items=
//   U<TAB>user<TAB>item<TAB>rating     training edge
//   H<TAB>user<TAB>item<TAB>rating     holdout edge
//
// Header lines are optional on input; unknown header keys are ignored.
// Without users=/items= the node counts are inferred from the largest ids.
void write_graph(const Bigraph& graph, std::ostream& out);
void write_graph(const Bigraph& graph, const std::filesystem::path& path);

// Throws ParseError (with line number) on malformed input or when the file
// has no training edges. Duplicate edges and out-of-range ids are a
// ParseError with line 0.
Bigraph read_graph(std::istream& in);
Bigraph read_graph(const std::filesystem::path& path);

}  // namespace bigrec

#endif  // BIGREC_GRAPH_IO_HPP_
