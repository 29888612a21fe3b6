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

// wlra: command-line front end for the weighted low-rank approximation
// library and the biclique reduction toolkit.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_solver_flags(CLI::App& app, wlra::SolveConfig& cfg) {
  app.add_option("--starts", cfg.starts, "Number of multistart seeds")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for random starts");
  app.add_option("--max-sweeps", cfg.max_sweeps, "Sweep limit per start")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.rel_tol, "Relative objective decrease that ends a run")
      ->check(CLI::PositiveNumber);
  app.add_flag("--nonneg", cfg.nonneg, "Keep factors nonnegative when that does not hurt");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted low-rank approximation and biclique reductions"};
  app.require_subcommand(1);

  wlra::cli::SolveOptions solve;
  solve.config.threads = wlra::cli::default_threads();
  std::string solve_out;
  std::string solve_weights;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate a matrix by alternating minimization");
  solve_cmd->add_option("matrix", solve.matrix, "Data matrix (`?` marks missing entries)")
      ->required();
  solve_cmd->add_option("weights", solve_weights, "Weight matrix (default: mask of known entries)");
  solve_cmd->add_option("--rank", solve.rank, "Factorization rank")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve_out, "JSON report path");
  add_solver_flags(*solve_cmd, solve.config);

  wlra::cli::ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build a WLRA instance from a bipartite graph");
  reduce_cmd->add_option("graph", reduce.graph, "Edge-list graph file")->required();
  reduce_cmd->add_option("--kind", reduce.kind, "w1d, md1d or block")
      ->check(CLI::IsMember({"w1d", "md1d", "block"}));
  reduce_cmd->add_option("--d", reduce.d, "Penalty parameter or auto:<eps>");
  reduce_cmd->add_option("--rank", reduce.rank, "Number of copies for block")
      ->check(CLI::PositiveNumber);
  reduce_cmd->add_option("--out", reduce.out, "Instance directory")->required();

  wlra::cli::BicliqueOptions biclique;
  auto* biclique_cmd = app.add_subcommand("biclique", "Exhaustive biclique search");
  biclique_cmd->add_option("graph", biclique.graph, "Edge-list graph file")->required();
  biclique_cmd->add_option("--mode", biclique.mode, "max or maximal")
      ->check(CLI::IsMember({"max", "maximal"}));

  wlra::cli::LandscapeOptions landscape;
  std::string landscape_out;
  auto* landscape_cmd =
      app.add_subcommand("landscape", "Objective over u = (x, y, sqrt(1 - x^2 - y^2))");
  landscape_cmd->add_option("matrix", landscape.matrix, "3-row data matrix")->required();
  landscape_cmd->add_option("weights", landscape.weights, "Weight matrix")->required();
  landscape_cmd->add_option("--grid", landscape.grid, "Grid points per axis")
      ->check(CLI::Range(2, 100000));
  landscape_cmd->add_option("--out", landscape_out, "CSV output path");

  wlra::cli::VerifyOptions verify;
  verify.config.threads = wlra::cli::default_threads();
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Check the reduction bounds on an instance");
  verify_cmd->add_option("instance", verify.instance, "Instance directory")->required();
  verify_cmd->add_option("--eps", verify.eps, "Accuracy parameter in (0, 1]");
  verify_cmd->add_option("--candidates", verify.candidates,
                         "witness, indicators, random:N or solve");
  verify_cmd->add_option("--out", verify_out, "JSON lines output path");
  add_solver_flags(*verify_cmd, verify.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wlra::cli::kExitInput;
  }

  wlra::cli::RunReport report;
  if (*solve_cmd) {
    if (!solve_weights.empty()) solve.weights = solve_weights;
    if (!solve_out.empty()) solve.out = solve_out;
    report = wlra::cli::cmd_solve(solve, std::cout, std::cerr);
  } else if (*reduce_cmd) {
    report = wlra::cli::cmd_reduce(reduce, std::cout, std::cerr);
  } else if (*biclique_cmd) {
    report = wlra::cli::cmd_biclique(biclique, std::cout, std::cerr);
  } else if (*landscape_cmd) {
    if (!landscape_out.empty()) landscape.out = landscape_out;
    report = wlra::cli::cmd_landscape(landscape, std::cout, std::cerr);
  } else if (*verify_cmd) {
    if (!verify_out.empty()) verify.out = verify_out;
    report = wlra::cli::cmd_verify(verify, std::cout, std::cerr);
  }
  return report.exit_code;
}
