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
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "wlra/error.hpp"
#include "wlra/instance_io.hpp"
#include "wlra/matrix_io.hpp"
#include "wlra/reductions.hpp"

namespace wlra {
namespace {

BipartiteGraph example1() { return load_graph(oracle::data_path("example1_graph.txt")); }

oracle::Grid grid_of(const Matrix& m) {
  oracle::Grid g(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

template <typename F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(BuildW1dTest, Examples) {
  EXPECT_EQ(build_w1d(BipartiteGraph::identity(2), 5).w.values(),
            Matrix::from_rows({{1, 5}, {5, 1}}));
  const auto inst = build_w1d(example1(), 100);
  EXPECT_EQ(inst.w.values(), Matrix::from_rows({{1, 100, 1}, {100, 1, 1}, {1, 1, 1}}));
  EXPECT_EQ(inst.m, example1().biadjacency());
  EXPECT_EQ(inst.kind, InstanceKind::kPositiveWeight);
  EXPECT_EQ(inst.rank, 1u);
  EXPECT_EQ(build_w1d(BipartiteGraph::complete(2, 3), 1e6).w.values(), Matrix(2, 3, 1.0));
  expect_error(ErrorKind::kParameter, [] { build_w1d(BipartiteGraph::identity(2), 0.5); });
  expect_error(ErrorKind::kCapacity, [] { build_w1d(BipartiteGraph::identity(2), 1e151); });
}

TEST(ThresholdTest, Lemma3Arithmetic) {
  EXPECT_EQ(lemma3_d(7, 1.0), 7529536.0);
  EXPECT_EQ(lemma3_d(1, 1.0), 64.0);
  EXPECT_EQ(lemma3_d(7, 0.5), 120472576.0);
  expect_error(ErrorKind::kParameter, [] { lemma3_d(7, 0.0); });
  expect_error(ErrorKind::kParameter, [] { lemma3_d(7, 1.5); });
}

TEST(ThresholdTest, MissingDataThresholdArithmetic) {
  // 8 * 7^3.5 + sqrt(7) = 8 * 343 * sqrt(7) + sqrt(7).
  EXPECT_NEAR(lemma6_threshold(7, 1.0), 2745.0 * std::sqrt(7.0), 1e-9);
  EXPECT_NEAR(lemma6_threshold(2, 0.5), 32.0 * std::pow(2.0, 3.5) + std::sqrt(2.0), 1e-9);
}

TEST(BuildMd1dTest, ExampleOnePattern) {
  const auto inst = build_md1d(example1(), 10);
  EXPECT_EQ(inst.m, Matrix::from_rows({{1, 0, 1, 0, 0},
                                       {0, 1, 1, 0, 0},
                                       {1, 1, 1, 0, 0},
                                       {0, 0, 0, 10, 0},
                                       {0, 0, 0, 0, 10}}));
  EXPECT_EQ(inst.w.values(), Matrix::from_rows({{1, 1, 1, 1, 0},
                                                {1, 1, 1, 0, 1},
                                                {1, 1, 1, 0, 0},
                                                {0, 1, 0, 1, 0},
                                                {1, 0, 0, 0, 1}}));
  EXPECT_EQ(inst.zero_count(), 2u);
  EXPECT_TRUE(inst.w.is_binary());
}

TEST(BuildMd1dTest, IdentityTwoByTwo) {
  const auto inst = build_md1d(BipartiteGraph::identity(2), 4);
  EXPECT_EQ(inst.m, Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4}}));
  EXPECT_EQ(inst.w.values(),
            Matrix::from_rows({{1, 1, 1, 0}, {1, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}}));
}

TEST(BuildMd1dTest, SingleZeroGivesElementarySelectors) {
  const auto g = BipartiteGraph(Matrix::from_rows({{1, 1, 1}, {1, 0, 1}}));
  const auto inst = build_md1d(g, 3);
  ASSERT_EQ(inst.zero_count(), 1u);
  EXPECT_EQ(inst.m.rows(), 3u);
  EXPECT_EQ(inst.m.cols(), 4u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(inst.w(i, 3), i == 1 ? 1.0 : 0.0);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(inst.w(2, j), j == 1 ? 1.0 : 0.0);
}

TEST(BuildMd1dTest, Errors) {
  expect_error(ErrorKind::kDegenerate, [] { build_md1d(BipartiteGraph::complete(2, 2), 10); });
  expect_error(ErrorKind::kParameter, [] { build_md1d(BipartiteGraph::identity(2), 1.0); });
}

// Structure of the selector blocks on every 3x3 graph with a non-edge.
TEST(BuildMd1dTest, StructuralAuditAgainstOracle) {
  for (std::uint64_t bits = 0; bits < 511; ++bits) {
    const auto grid = oracle::graph_from_bits(3, 3, bits);
    const auto inst = build_md1d(BipartiteGraph(Matrix::generate(3, 3, [&](auto i, auto j) {
                                   return grid[i][j];
                                 })),
                                 7.0);
    const auto ref = oracle::md_instance(grid, 7.0);
    ASSERT_EQ(grid_of(inst.m), ref.m) << bits;
    ASSERT_EQ(grid_of(inst.w.values()), ref.w) << bits;
    const std::size_t s = 3, t = 3, z = inst.zero_count();
    ASSERT_EQ(z, 9 - oracle::edges(grid));
    std::size_t units = 0;
    for (double x : inst.w.values().data()) units += x == 1.0;
    ASSERT_EQ(units, s * t + 3 * z);
    for (std::size_t k = 0; k < z; ++k) {
      std::size_t col_ones = 0, row_ones = 0;
      for (std::size_t i = 0; i < s; ++i) col_ones += inst.w(i, t + k) == 1.0;
      for (std::size_t j = 0; j < t; ++j) row_ones += inst.w(s + k, j) == 1.0;
      ASSERT_EQ(col_ones, 1u);
      ASSERT_EQ(row_ones, 1u);
      const auto [i, j] = inst.zero_entries[k];
      ASSERT_EQ(inst.w(i, t + k), 1.0);
      ASSERT_EQ(inst.w(s + k, j), 1.0);
    }
  }
}

TEST(WitnessTest, ExampleThree) {
  const auto inst = build_md1d(example1(), 10);
  const Biclique b{{1, 2}, {1, 2}};
  const auto f = md1d_witness(inst, b, {2.0, WitnessSide::kUseV});
  const Vector u = f.u_column(), v = f.v_column();
  const Vector eu{0, 1, 1, 0.1, 100}, ev{0, 1, 1, 100, 0.1};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(u[i], eu[i], 1e-14 * (1 + eu[i]));
    EXPECT_NEAR(v[i], ev[i], 1e-14 * (1 + ev[i]));
  }
  EXPECT_NEAR(wlra_objective(inst.m, inst.w, f), 3.02, 1e-10);
}

TEST(WitnessTest, UnitExponentUsesOnlyOneAndD) {
  const double d = 6.0;
  const auto inst = build_md1d(example1(), d);
  const auto f = md1d_witness(inst, Biclique{{0, 2}, {0, 2}}, {1.0, WitnessSide::kUseV});
  for (std::size_t k = 3; k < 5; ++k) {
    EXPECT_TRUE(f.u()(k, 0) == 1.0 || f.u()(k, 0) == d);
    EXPECT_TRUE(f.v()(k, 0) == 1.0 || f.v()(k, 0) == d);
  }
  EXPECT_LE(wlra_objective(inst.m, inst.w, f), 3.0 + 2.0 * 2.0);
}

TEST(WitnessTest, IdentityTwoByTwoDirectEvaluation) {
  const double d = 100.0, k = 3.0;
  const auto inst = build_md1d(BipartiteGraph::identity(2), d);
  const auto f = md1d_witness(inst, Biclique{{0}, {0}}, {k, WitnessSide::kUseV});
  const auto ref = oracle::md_instance({{1, 0}, {0, 1}}, d);
  const auto [u, v] = oracle::md_witness(ref, 2, 2, {{0}, {0}}, d, k, false);
  const double direct = oracle::rank_one_objective(ref.m, ref.w, u, v);
  // Each of the two selector rows/columns leaves one d^(1-K) residual.
  EXPECT_NEAR(direct, 1.0 + 2.0 * std::pow(d, 2 * (1 - k)), 1e-15);
  EXPECT_NEAR(wlra_objective(inst.m, inst.w, f), direct, 1e-15);
  EXPECT_LE(direct, 1.0 + 2.0 * 2.0 * std::pow(d, 2 * (1 - k)));
}

TEST(WitnessTest, BoundAndMonotonicityInK) {
  for (std::uint64_t bits = 0; bits < 511; bits += 5) {
    const auto grid = oracle::graph_from_bits(3, 3, bits);
    const BipartiteGraph g(Matrix::generate(3, 3, [&](auto i, auto j) { return grid[i][j]; }));
    const auto best = max_edge_biclique(g);
    for (double d : {2.0, 10.0, 100.0}) {
      const auto inst = build_md1d(g, d);
      const double z = static_cast<double>(inst.zero_count());
      for (auto side : {WitnessSide::kUseV, WitnessSide::kUseU}) {
        double previous = INFINITY;
        for (double k : {1.0, 2.0, 5.0}) {
          const auto f = md1d_witness(inst, best.best, {k, side});
          const double obj = wlra_objective(inst.m, inst.w, f);
          const double bound = double(best.optimum) + 2 * z * std::pow(d, 2 * (1 - k));
          EXPECT_LE(obj, bound * (1 + 1e-12)) << bits << " d=" << d << " K=" << k;
          EXPECT_LE(obj, previous * (1 + 1e-12));
          previous = obj;
          const auto ref = oracle::md_instance(grid, d);
          oracle::SimpleBiclique sb{best.best.rows, best.best.cols};
          const auto [u, v] = oracle::md_witness(ref, 3, 3, sb, d, k, side == WitnessSide::kUseU);
          EXPECT_NEAR(obj, oracle::rank_one_objective(ref.m, ref.w, u, v), 1e-9 * (1 + obj));
        }
      }
    }
  }
}

TEST(WitnessTest, DefaultExponentMeetsSlackTarget) {
  for (double d : {2.0, 10.0, 7263.6, 1e6})
    for (std::size_t z : {1u, 2u, 9u}) {
      const double k = default_witness_exponent(d, z);
      EXPECT_NEAR(2.0 * z * std::pow(d, 2 * (1 - k)), 1e-9, 1e-15);
    }
}

TEST(WitnessTest, Errors) {
  const auto w1d = build_w1d(example1(), 10);
  expect_error(ErrorKind::kParameter, [&] { md1d_witness(w1d, Biclique{}, {}); });
  const auto md = build_md1d(example1(), 10);
  expect_error(ErrorKind::kConstraint, [&] { md1d_witness(md, Biclique{{0, 1}, {0}}, {}); });
  expect_error(ErrorKind::kParameter, [&] { md1d_witness(md, Biclique{}, {0.5}); });
  expect_error(ErrorKind::kCapacity, [&] {
    md1d_witness(build_md1d(example1(), 1e100), Biclique{}, {5.0});
  });
}

TEST(BlockTest, Examples) {
  const auto g = example1();
  const auto one = build_block_rank_r(g, 1, 7);
  const auto w1d = build_w1d(g, 7);
  EXPECT_EQ(one.m, w1d.m);
  EXPECT_EQ(one.w, w1d.w);

  const auto two = build_block_rank_r(g, 2, 3);
  ASSERT_EQ(two.m.rows(), 6u);
  ASSERT_EQ(two.m.cols(), 6u);
  double edges = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const bool diag = i / 3 == j / 3;
      EXPECT_EQ(two.m(i, j), diag ? g.biadjacency()(i % 3, j % 3) : 0.0);
      EXPECT_EQ(two.w(i, j), two.m(i, j) == 1.0 ? 1.0 : 3.0);
      edges += two.m(i, j);
    }
  EXPECT_EQ(edges, 2.0 * g.edge_count());
  EXPECT_EQ(two.rank, 2u);
  expect_error(ErrorKind::kCapacity,
               [] { build_block_rank_r(BipartiteGraph::complete(100, 100), 40, 2); });
}

TEST(RankOneWeightReductionTest, Examples) {
  const RankOneWeightReduction id(Matrix::from_rows({{1, 2}, {3, 4}}), Vector{1, 1}, Vector{1, 1});
  EXPECT_EQ(id.reduced(), Matrix::from_rows({{1, 2}, {3, 4}}));
  const FactorPair f = FactorPair::rank_one(Vector{1, 2}, Vector{3, 4});
  EXPECT_EQ(id.back_map(f).u(), f.u());

  const RankOneWeightReduction tiny(Matrix::from_rows({{2}}), Vector{4}, Vector{9});
  EXPECT_EQ(tiny.reduced(), Matrix::from_rows({{12}}));

  EXPECT_THROW(RankOneWeightReduction(Matrix(1, 1), Vector{0}, Vector{1}), Error);
  EXPECT_THROW(RankOneWeightReduction(Matrix(1, 1), Vector{1}, Vector{-2}), Error);
}

TEST(RankOneWeightReductionTest, BackMapPreservesObjective) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> x(-2, 2);
  const Matrix m = Matrix::generate(3, 3, [&](auto, auto) { return x(rng); });
  const Vector s{1, 4, 9}, t{1, 1, 4};
  const RankOneWeightReduction red(m, s, t);
  const WeightMatrix w(Matrix::generate(3, 3, [&](auto i, auto j) { return s[i] * t[j]; }));
  EXPECT_EQ(red.weights(), w);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + trial % 2;
    const FactorPair f(Matrix::generate(3, r, [&](auto, auto) { return x(rng); }),
                       Matrix::generate(3, r, [&](auto, auto) { return x(rng); }));
    const double reduced = wlra_objective(red.reduced(), WeightMatrix::ones(3, 3), f);
    EXPECT_NEAR(wlra_objective(m, w, red.back_map(f)), reduced, 1e-10 * (1 + reduced));
  }
}

TEST(RescaleTest, WeightsOverD) {
  const auto inst = build_w1d(BipartiteGraph::identity(2), 5);
  const auto scaled = rescale_theorem1(inst);
  const Matrix expected = Matrix::from_rows({{0.2, 1}, {1, 0.2}});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(scaled.w(i, j), expected(i, j), 1e-16);
  EXPECT_EQ(rescale_theorem1(build_w1d(example1(), 1)).w, build_w1d(example1(), 1).w);

  std::mt19937 rng(9);
  std::uniform_real_distribution<double> x(-2, 2);
  const auto big = build_w1d(example1(), 1234.5);
  const auto big_scaled = rescale_theorem1(big);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector u{x(rng), x(rng), x(rng)}, v{x(rng), x(rng), x(rng)};
    const double f = wlra_objective(big.m, big.w, u, v);
    EXPECT_NEAR(wlra_objective(big_scaled.m, big_scaled.w, u, v), f / 1234.5, 1e-12 * f / 1234.5);
  }
  EXPECT_THROW(rescale_theorem1(build_md1d(example1(), 10)), Error);
}

TEST(RescaleTest, DataOverD) {
  const double d = 10.0;
  const auto inst = build_md1d(example1(), d);
  const auto scaled = rescale_theorem2(inst);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(scaled.m(i, j), inst.m(i, j) / d, 1e-16);
  EXPECT_EQ(scaled.m(3, 3), 1.0);
  EXPECT_EQ(scaled.m(4, 4), 1.0);

  std::mt19937 rng(10);
  std::uniform_real_distribution<double> x(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Vector u(5), v(5), vd(5);
    for (auto& a : u) a = x(rng);
    for (std::size_t j = 0; j < 5; ++j) {
      v[j] = x(rng);
      vd[j] = v[j] / d;
    }
    const double f = wlra_objective(inst.m, inst.w, u, v);
    EXPECT_NEAR(wlra_objective(scaled.m, scaled.w, u, vd), f / (d * d), 1e-12 * f / (d * d));
  }
  EXPECT_THROW(rescale_theorem2(build_w1d(example1(), 10)), Error);
}

TEST(PenaltyTest, MatchesObjectiveAndIndependentFormula) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> x(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto grid = oracle::graph_from_bits(3, 4, rng() & 0xfff);
    const BipartiteGraph g(Matrix::generate(3, 4, [&](auto i, auto j) { return grid[i][j]; }));
    const double d = 1.0 + 1e4 * (rng() % 1000) / 1000.0;
    const auto inst = build_w1d(g, d);
    const Vector u{x(rng), x(rng), x(rng)}, v{x(rng), x(rng), x(rng), x(rng)};
    const double ref = oracle::penalty(grid, d, u, v);
    EXPECT_LE(std::abs(wlra_objective(inst.m, inst.w, u, v) - ref), 1e-12 * (1 + ref));
    EXPECT_LE(std::abs(penalty_objective(g, d, u, v) - ref), 1e-12 * (1 + ref));
  }
}

class InstanceIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("wlra_instance_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(InstanceIoTest, MissingDataRoundTripAndGoldenFiles) {
  const auto inst = build_md1d(example1(), 10);
  save_instance(dir_, inst, 4);
  const auto back = load_instance(dir_);
  EXPECT_EQ(back.m, inst.m);
  EXPECT_EQ(back.w, inst.w);
  EXPECT_EQ(back.zero_entries, inst.zero_entries);
  EXPECT_EQ(back.source, inst.source);

  const std::string golden = oracle::data_path("md1d_example1_d10");
  EXPECT_EQ(load_masked_matrix(dir_ / "M.txt"), load_masked_matrix(golden + "/M.txt"));
  EXPECT_EQ(load_weight_matrix(dir_ / "W.txt"), load_weight_matrix(golden + "/W.txt"));
  EXPECT_EQ(load_instance(golden).m, inst.m);
}

TEST_F(InstanceIoTest, PositiveAndBlockRoundTrip) {
  for (const auto& inst : {build_w1d(example1(), lemma3_d(7, 1)),
                           build_block_rank_r(example1(), 2, 3),
                           rescale_theorem1(build_w1d(example1(), 5))}) {
    save_instance(dir_, inst);
    const auto back = load_instance(dir_);
    EXPECT_EQ(back.m, inst.m);
    EXPECT_EQ(back.w, inst.w);
    EXPECT_EQ(back.rank, inst.rank);
    EXPECT_EQ(back.d, inst.d);
    EXPECT_EQ(back.rescaling, inst.rescaling);
  }
}

TEST_F(InstanceIoTest, TamperedMatrixIsRejected) {
  save_instance(dir_, build_md1d(example1(), 10));
  save_matrix(dir_ / "W.txt", Matrix(5, 5, 1.0));
  try {
    load_instance(dir_);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInconsistency);
  }
}

}  // namespace
}  // namespace wlra
