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

#ifndef BIGREC_TOOLS_CLI_HPP_
#define BIGREC_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace bigrec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;  // bad flags, parameters or input files
inline constexpr int kFailed = 2;   // I/O errors and failed benchmark cells

// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bigrec::cli

#endif  // BIGREC_TOOLS_CLI_HPP_
