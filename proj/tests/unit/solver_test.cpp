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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "wlra/analysis.hpp"
#include "wlra/biclique.hpp"
#include "wlra/error.hpp"
#include "wlra/matrix_io.hpp"
#include "wlra/reductions.hpp"
#include "wlra/solver.hpp"

namespace wlra {
namespace {

const Matrix kM1 = Matrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
const WeightMatrix kW1(Matrix::from_rows({{1, 100, 2}, {100, 1, 2}, {1, 1, 1}}));
const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

oracle::Grid grid_of(const Matrix& m) {
  oracle::Grid g(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, double lo, double hi) {
  std::uniform_real_distribution<double> x(lo, hi);
  return Matrix::generate(r, c, [&](auto, auto) { return x(rng); });
}

SolveConfig quick(std::size_t starts = 8) {
  SolveConfig cfg;
  cfg.starts = starts;
  return cfg;
}

TEST(ClosedFormTest, ExampleOneMinimum) {
  const Vector v = closed_form_v(kM1, kW1, Vector{kHalfRoot2, 0, kHalfRoot2});
  const Vector expected{std::sqrt(2.0), 0, std::sqrt(2.0)};
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(v[j], expected[j], 2e-2);
}

TEST(ClosedFormTest, ExactRankOneData) {
  const Vector u{0.6, 0.8}, w{3, -1, 2};
  const Matrix m = Matrix::generate(2, 3, [&](auto i, auto j) { return u[i] * w[j]; });
  const Vector v = closed_form_v(m, WeightMatrix::ones(2, 3), u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(v[j], w[j], 1e-15);
}

TEST(ClosedFormTest, ZeroDenominatorGivesZero) {
  const auto masked = load_masked_matrix(oracle::data_path("example2_M.txt"));
  EXPECT_EQ(closed_form_v(masked.values(), masked.weights(), Vector{1, 0}), (Vector{1, 0}));
}

TEST(ClosedFormTest, MatchesOracleAndIsStationary) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(rng, 4, 3, -2, 2);
    const WeightMatrix w(random_matrix(rng, 4, 3, 0, 3));
    const Vector u = random_matrix(rng, 4, 1, -1, 1).column_values(0);
    const Vector v = closed_form_v(m, w, u);
    const auto ref = oracle::best_v(grid_of(m), grid_of(w.values()), u);
    const double f = wlra_objective(m, w, u, v);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(v[j], ref[j], 1e-12 * (1 + std::abs(ref[j])));
      for (double h : {-1e-4, 1e-4}) {
        Vector p = v;
        p[j] += h;
        EXPECT_GE(wlra_objective(m, w, u, p), f - 1e-12 * (1 + f));
      }
    }
    const Vector u2 = closed_form_u(m, w, v);
    EXPECT_LE(wlra_objective(m, w, u2, v), f + 1e-12 * (1 + f));
  }
}

TEST(ClosedFormTest, Errors) {
  try {
    closed_form_v(kM1, kW1, Vector{0, 0, 0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
  EXPECT_THROW(closed_form_v(kM1, kW1, Vector{1, 0}), Error);
  EXPECT_THROW(closed_form_u(kM1, kW1, Vector{0, 0, 0}), Error);
  EXPECT_THROW(closed_form_v(kM1, WeightMatrix(Matrix(3, 3)), Vector{1, 1, 1}), Error);
}

TEST(SolveConfigTest, Validation) {
  SolveConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.starts = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.rel_tol = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.max_sweeps = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.divergence_threshold = -1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(SolveRankOneTest, ExampleOneFindsFourBicliqueClusters) {
  // The {s3}x{t1,t2,t3} basin catches about 1.5% of uniform starts.
  SolveConfig cfg;
  cfg.starts = 512;
  const auto result = solve_rank_one(kM1, kW1, cfg);
  const auto g = BipartiteGraph(kM1);
  std::set<Biclique> clusters;
  double best = INFINITY;
  for (const auto& run : result.runs) {
    ASSERT_FALSE(run.diverged);
    if (!run.converged) continue;
    clusters.insert(extract_biclique(g, run.factors.u_column(), run.factors.v_column(), 0.5));
    best = std::min(best, run.objective);
  }
  const auto maximal = maximal_bicliques(g);
  EXPECT_EQ(clusters, std::set<Biclique>(maximal.begin(), maximal.end()));
  EXPECT_EQ(result.best.objective, best);
  EXPECT_NEAR(result.best.objective, 3.91964, 1e-5);
}

TEST(SolveRankOneTest, ExactRankOneRecovered) {
  std::mt19937 rng(4);
  const Vector a = random_matrix(rng, 4, 1, -1, 1).column_values(0);
  const Vector b = random_matrix(rng, 5, 1, -1, 1).column_values(0);
  const Matrix m = FactorPair::rank_one(a, b).product();
  const auto r = solve_rank_one(m, WeightMatrix::ones(4, 5), quick());
  EXPECT_LT(r.best.objective, 1e-10);
  EXPECT_TRUE(r.best.converged);
}

TEST(SolveRankOneTest, ExampleTwoDiverges) {
  const auto masked = load_masked_matrix(oracle::data_path("example2_M.txt"));
  const auto r = solve_rank_one(masked.values(), masked.weights(), quick());
  EXPECT_LT(r.best.objective, 1e-6);
  EXPECT_TRUE(r.best.diverged);
  EXPECT_FALSE(r.best.converged);
}

TEST(SolveRankOneTest, ResultInvariants) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(rng, 4, 4, -1, 1);
    const WeightMatrix w(random_matrix(rng, 4, 4, 0.1, 2));
    const auto r = solve_rank_one(m, w, quick(4));
    for (const auto& run : r.runs) {
      EXPECT_FALSE(run.converged && run.diverged);
      EXPECT_NEAR(run.objective, wlra_objective(m, w, run.factors), 1e-10 * (1 + run.objective));
      EXPECT_GE(run.objective, 0.0);
      EXPECT_GE(run.objective, r.best.objective);
    }
  }
}

TEST(SolveRankOneTest, TrajectoryIsMonotoneAndBalanced) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix m = random_matrix(rng, 3 + trial % 3, 4, -1, 2);
    const Matrix wv = Matrix::generate(m.rows(), m.cols(), [&](auto, auto) {
      return rng() % 4 == 0 ? 0.0 : 1.0 + rng() % 5;
    });
    if (WeightMatrix(wv).is_zero()) continue;
    SolveConfig cfg = quick(1);
    cfg.record_trajectory = true;
    cfg.max_sweeps = 300;
    const Vector u0 = random_matrix(rng, m.rows(), 1, -1, 1).column_values(0);
    const Vector v0 = random_matrix(rng, m.cols(), 1, -1, 1).column_values(0);
    const auto r = solve_rank_one_from(m, WeightMatrix(wv), u0, v0, cfg);
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
      const double prev = r.trajectory[k - 1];
      EXPECT_LE(r.trajectory[k], prev + 1e-12 * (1 + prev)) << trial << " step " << k;
    }
    const double nu = norm2(r.factors.u_column()), nv = norm2(r.factors.v_column());
    EXPECT_LE(std::abs(nu - nv), 1e-10 * (nu + nv));
  }
}

TEST(SolveRankOneTest, ScaleInvariantTrajectory) {
  std::mt19937 rng(8);
  const Matrix m = random_matrix(rng, 4, 3, -1, 1);
  const WeightMatrix w(random_matrix(rng, 4, 3, 0.5, 2));
  Vector u = random_matrix(rng, 4, 1, -1, 1).column_values(0);
  Vector v = random_matrix(rng, 3, 1, -1, 1).column_values(0);
  SolveConfig cfg = quick(1);
  cfg.record_trajectory = true;
  const auto a = solve_rank_one_from(m, w, u, v, cfg);
  for (double& x : u) x *= 2;
  for (double& x : v) x /= 2;
  const auto b = solve_rank_one_from(m, w, u, v, cfg);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t k = 0; k < a.trajectory.size(); ++k)
    EXPECT_NEAR(a.trajectory[k], b.trajectory[k], 1e-10 * (1 + a.trajectory[k]));
}

TEST(SolveRankOneTest, NonnegNeverWorseOnNonnegativeData) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(rng, 4, 4, 0, 2);
    const WeightMatrix w(random_matrix(rng, 4, 4, 0, 2));
    SolveConfig cfg = quick(1);
    cfg.nonneg = true;
    cfg.record_trajectory = true;
    const Vector u0 = random_matrix(rng, 4, 1, -1, 1).column_values(0);
    const Vector v0 = random_matrix(rng, 4, 1, -1, 1).column_values(0);
    Vector ua(u0), va(v0);
    for (double& x : ua) x = std::abs(x);
    for (double& x : va) x = std::abs(x);
    EXPECT_LE(wlra_objective(m, w, ua, va), wlra_objective(m, w, u0, v0));
    const auto r = solve_rank_one_from(m, w, u0, v0, cfg);
    for (std::size_t k = 1; k < r.trajectory.size(); ++k)
      EXPECT_LE(r.trajectory[k], r.trajectory[k - 1] * (1 + 1e-12) + 1e-300);
    for (double x : r.factors.u().data()) EXPECT_GE(x, 0.0);
  }
  // On Example 1 the best nonneg solution is itself nonnegative.
  SolveConfig cfg = quick();
  cfg.nonneg = true;
  const auto r = solve_rank_one(kM1, kW1, cfg);
  for (double x : r.best.factors.u().data()) EXPECT_GE(x, 0.0);
  for (double x : r.best.factors.v().data()) EXPECT_GE(x, 0.0);
}

TEST(SolveRankOneTest, DeterministicAcrossThreadCounts) {
  SolveConfig cfg = quick(16);
  cfg.seed = 11;
  const auto one = solve_rank_one(kM1, kW1, cfg);
  cfg.threads = 4;
  const auto four = solve_rank_one(kM1, kW1, cfg);
  EXPECT_EQ(one.best.start_index, four.best.start_index);
  EXPECT_EQ(one.best.objective, four.best.objective);
  for (std::size_t k = 0; k < one.runs.size(); ++k)
    EXPECT_EQ(one.runs[k].factors.u(), four.runs[k].factors.u());
}

TEST(StartFactorTest, FirstStartIsDeterministicAndOthersBounded) {
  const Matrix first = start_factor(3, 2, 99, 0);
  EXPECT_EQ(first, Matrix::from_rows({{1, 1.0 / 3}, {1, 2.0 / 3}, {1, 1}}));
  EXPECT_EQ(start_factor(4, 1, 5, 3), start_factor(4, 1, 5, 3));
  EXPECT_NE(start_factor(4, 1, 5, 3), start_factor(4, 1, 5, 4));
  EXPECT_NE(start_factor(4, 1, 5, 3), start_factor(4, 1, 6, 3));
  for (double x : start_factor(50, 3, 1, 7).data()) {
    EXPECT_GE(x, -1.0);
    EXPECT_LE(x, 1.0);
  }
}

TEST(SolveRankRTest, FullRankIsExact) {
  std::mt19937 rng(12);
  const Matrix m = random_matrix(rng, 3, 4, -1, 1);
  const auto r = solve_rank_r(m, WeightMatrix::ones(3, 4), 3, quick(4));
  EXPECT_LT(r.best.objective, 1e-8);
}

TEST(SolveRankRTest, RankOnePathMatchesRankOneSolver) {
  SolveConfig cfg = quick(16);
  cfg.extrapolate = false;
  const double a = solve_rank_one(kM1, kW1, cfg).best.objective;
  const double b = solve_rank_r(kM1, kW1, 1, cfg).best.objective;
  EXPECT_NEAR(a, b, 1e-9);
  EXPECT_NEAR(solve_rank_one(kM1, kW1, SolveConfig{}).best.objective, b, 1e-9);
}

TEST(SolveRankRTest, BlockInstanceWithinTwiceOptimum) {
  const auto g = load_graph(oracle::data_path("example1_graph.txt"));
  const auto inst = build_block_rank_r(g, 2, lemma3_d(g.edge_count(), 1.0));
  const auto r = solve_rank_r(inst.m, inst.w, 2, SolveConfig{});
  EXPECT_LE(r.best.objective, 6.0 + 1e-9);
  EXPECT_GE(r.best.objective, 4.0);
}

TEST(SolveRankRTest, MonotoneTrajectoryAndErrors) {
  std::mt19937 rng(13);
  const Matrix m = random_matrix(rng, 5, 4, -1, 1);
  const Matrix wv = Matrix::generate(5, 4, [&](auto, auto) { return double(rng() % 3); });
  SolveConfig cfg = quick(1);
  cfg.record_trajectory = true;
  const auto r = solve_rank_r_from(
      m, WeightMatrix(wv),
      FactorPair(random_matrix(rng, 5, 2, -1, 1), random_matrix(rng, 4, 2, -1, 1)), cfg);
  for (std::size_t k = 1; k < r.trajectory.size(); ++k)
    EXPECT_LE(r.trajectory[k], r.trajectory[k - 1] * (1 + 1e-12) + 1e-12);
  EXPECT_THROW(solve_rank_r(m, WeightMatrix(wv), 0, cfg), Error);
  EXPECT_THROW(solve_rank_r(m, WeightMatrix(wv), 5, cfg), Error);
}

TEST(LandscapeTest, ExampleOneHasFourMinima) {
  const auto points = landscape_grid(kM1, kW1, 201);
  const auto minima = grid_local_minima(points, 201);
  EXPECT_EQ(minima.size(), 4u);
  for (const auto& p : points) EXPECT_LE(p.x * p.x + p.y * p.y, 1.0 + 1e-12);
  // (sqrt2/2, 0) is the global grid minimum region
  const auto near = std::min_element(points.begin(), points.end(), [](auto& a, auto& b) {
    return std::hypot(a.x - kHalfRoot2, a.y) < std::hypot(b.x - kHalfRoot2, b.y);
  });
  const Vector u{near->x, near->y, std::sqrt(1 - near->x * near->x - near->y * near->y)};
  EXPECT_NEAR(near->objective, wlra_objective(kM1, kW1, u, closed_form_v(kM1, kW1, u)), 1e-12);
}

TEST(LandscapeTest, AlignedRankOneMinimumAtCorner) {
  const Matrix m = Matrix::from_rows({{1, 2}, {0, 0}, {0, 0}});
  const auto points = landscape_grid(m, WeightMatrix::ones(3, 2), 21);
  const auto best = std::min_element(points.begin(), points.end(),
                                     [](auto& a, auto& b) { return a.objective < b.objective; });
  EXPECT_EQ(best->x, 1.0);
  EXPECT_EQ(best->y, 0.0);
  EXPECT_LT(best->objective, 1e-12);
}

TEST(LandscapeTest, CsvAndErrors) {
  std::ostringstream out;
  write_landscape_csv(out, landscape_grid(kM1, kW1, 3));
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,objective");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6);  // 6 of 9 points feasible
  EXPECT_THROW(landscape_grid(Matrix(2, 2, 1.0), WeightMatrix::ones(2, 2), 5), Error);
  EXPECT_THROW(landscape_grid(kM1, kW1, 1), Error);
}

}  // namespace
}  // namespace wlra
