// Copyright 2026 The wlra Authors
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

// Subcommands of the wlra tool. Each command writes human-readable output to
// `out`, any requested files, and returns a RunReport whose exit code follows
// the tool's convention: 0 ok, 1 input error, 2 capacity or degenerate input,
// 3 unattained infimum, 4 failed bound check.

#ifndef WLRA_TOOLS_COMMANDS_HPP_
#define WLRA_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlra/solver.hpp"

namespace wlra::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitCapacity = 2,
  kExitDivergence = 3,
  kExitBound = 4,
};

struct RunReport {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, std::string>> summary;
  int exit_code = kExitOk;

  void add(std::string key, std::string value);
  // Value recorded under `key`, if any.
  std::optional<std::string> get(const std::string& key) const;
};

struct SolveOptions {
  std::filesystem::path matrix;
  std::optional<std::filesystem::path> weights;  // default: mask from `?` entries
  std::size_t rank = 1;
  SolveConfig config;
  std::optional<std::filesystem::path> out;  // JSON report
};

struct ReduceOptions {
  std::filesystem::path graph;
  std::string kind = "w1d";   // w1d, md1d or block
  std::string d = "auto:1";   // a number or auto:<eps>
  std::size_t rank = 2;       // block copies
  std::filesystem::path out;  // instance directory
};

struct BicliqueOptions {
  std::filesystem::path graph;
  std::string mode = "max";  // max or maximal
};

struct LandscapeOptions {
  std::filesystem::path matrix;
  std::filesystem::path weights;
  std::size_t grid = 201;
  std::optional<std::filesystem::path> out;  // CSV
};

struct VerifyOptions {
  std::filesystem::path instance;
  double eps = 1.0;
  std::string candidates = "indicators";  // witness, indicators, random:N, solve
  SolveConfig config;
  std::optional<std::filesystem::path> out;  // JSON lines; stdout otherwise
};

// Errors never escape: they are written to `err` and mapped to an exit code.
RunReport cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
RunReport cmd_reduce(const ReduceOptions& opts, std::ostream& out, std::ostream& err);
RunReport cmd_biclique(const BicliqueOptions& opts, std::ostream& out, std::ostream& err);
RunReport cmd_landscape(const LandscapeOptions& opts, std::ostream& out, std::ostream& err);
RunReport cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

// Thread count honouring the WLRA_THREADS cap.
std::size_t default_threads();

}  // namespace wlra::cli

#endif  // WLRA_TOOLS_COMMANDS_HPP_
