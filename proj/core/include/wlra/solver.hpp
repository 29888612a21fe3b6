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

// Alternating minimization for weighted low-rank approximation with
// multistart, unattained-infimum detection, and the (x, y) landscape scan
// used to visualize rank-one problems with three rows.

#ifndef WLRA_SOLVER_HPP_
#define WLRA_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "wlra/matrix.hpp"

namespace wlra {

struct SolveConfig {
  std::size_t max_sweeps = 2000;
  // Stop once a sweep lowers the objective by less than rel_tol relative.
  double rel_tol = 1e-12;
  std::size_t starts = 64;
  std::uint64_t seed = 0;
  // Replace factors by their absolute values whenever that does not raise
  // the objective (always the case for nonnegative data).
  bool nonneg = false;
  // Bound on ||U V^T||_F / (1 + ||M||_W) beyond which a still-decreasing run
  // is declared divergent.
  double divergence_threshold = 1e8;
  // Log-scale momentum step on the rank-one factors after each sweep.
  bool extrapolate = true;
  // Worker threads for multistart; 0 picks the hardware concurrency.
  std::size_t threads = 1;
  bool record_trajectory = false;

  // Throws kParameter on non-positive tolerances or counts.
  void validate() const;
};

struct SolveResult {
  FactorPair factors;
  double objective = 0.0;
  std::size_t sweeps_used = 0;
  bool converged = false;
  // Objective still decreasing while the factors blow up: the infimum is
  // approached but not attained.
  bool diverged = false;
  std::size_t start_index = 0;
  // Objective after every update step, when requested.
  std::vector<double> trajectory;
};

struct MultiStartResult {
  SolveResult best;  // smallest (objective, start_index)
  std::vector<SolveResult> runs;
};

// argmin_v of the objective for fixed u, columnwise; columns whose
// denominator sum_i W_ij u_i^2 vanishes get v_j = 0. Throws kDegenerate when
// u is zero and W is strictly positive.
Vector closed_form_v(const Matrix& m, const WeightMatrix& w, std::span<const double> u);
// Symmetric update of u for fixed v.
Vector closed_form_u(const Matrix& m, const WeightMatrix& w, std::span<const double> v);

// Observer called after every sweep with the sweep number and objective.
using SweepObserver = std::function<void(std::size_t sweep, double objective)>;

SolveResult solve_rank_one_from(const Matrix& m, const WeightMatrix& w,
                                std::span<const double> u0, std::span<const double> v0,
                                const SolveConfig& cfg, std::size_t start_index = 0,
                                const SweepObserver& observer = {});

MultiStartResult solve_rank_one(const Matrix& m, const WeightMatrix& w, const SolveConfig& cfg);

SolveResult solve_rank_r_from(const Matrix& m, const WeightMatrix& w, const FactorPair& start,
                              const SolveConfig& cfg, std::size_t start_index = 0);

MultiStartResult solve_rank_r(const Matrix& m, const WeightMatrix& w, std::size_t r,
                              const SolveConfig& cfg);

// Initial U for a start: start 0 is deterministic, U_ik = ((i+1)/m)^k, so
// the rank-one case starts from all ones; other starts draw uniform [-1, 1]
// entries from a generator seeded by (seed, start).
Matrix start_factor(std::size_t rows, std::size_t rank, std::uint64_t seed, std::size_t start);

struct LandscapePoint {
  std::size_t ix = 0;  // grid index of x
  std::size_t iy = 0;  // grid index of y
  double x = 0.0;
  double y = 0.0;
  double objective = 0.0;
};

// Objective of (u(x, y), closed_form_v(u)) with u = (x, y, sqrt(1 - x^2 - y^2))
// over the grid_n x grid_n lattice on [0, 1]^2, keeping points with
// x^2 + y^2 <= 1. Ordered by ix, then iy.
std::vector<LandscapePoint> landscape_grid(const Matrix& m, const WeightMatrix& w,
                                           std::size_t grid_n);

// Points strictly below every feasible 8-neighbour. An equal neighbour only
// disqualifies a point if it comes first in grid order.
std::vector<LandscapePoint> grid_local_minima(const std::vector<LandscapePoint>& points,
                                              std::size_t grid_n);

// `x,y,objective` header and 12 significant digits per value.
void write_landscape_csv(std::ostream& out, const std::vector<LandscapePoint>& points);

}  // namespace wlra

#endif  // WLRA_SOLVER_HPP_
