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

// Builders for the biclique-to-WLRA reduction instances, the explicit
// witness factor pairs, and the objective-preserving rescalings.

#ifndef WLRA_REDUCTIONS_HPP_
#define WLRA_REDUCTIONS_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wlra/biclique.hpp"
#include "wlra/matrix.hpp"

namespace wlra {

enum class InstanceKind { kPositiveWeight, kMissingData, kBlockRankR };

std::string_view to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(std::string_view name);

// Which rescaling, if any, has been applied to an instance.
enum class Rescaling { kNone, kWeightsOverD, kDataOverD };

// Largest accepted reduction parameter; keeps d^2 and d^(2K) representable.
inline constexpr double kMaxReductionParameter = 1e150;
// Largest dense instance (rows * cols) the block construction will build.
inline constexpr std::size_t kMaxInstanceEntries = 10'000'000;

struct ReductionInstance {
  Matrix m;
  WeightMatrix w;
  std::size_t rank = 1;
  double d = 1.0;
  InstanceKind kind = InstanceKind::kPositiveWeight;
  BipartiteGraph source;
  // Missing-data kind only: zero entries (i, j) of the biadjacency in
  // row-major order; position k is the selector index k_ij.
  std::vector<std::pair<std::size_t, std::size_t>> zero_entries;
  Rescaling rescaling = Rescaling::kNone;

  std::size_t zero_count() const noexcept { return zero_entries.size(); }
};

// Weights 1 on edges and d on non-edges; rank one.
ReductionInstance build_w1d(const BipartiteGraph& g, double d);

// Smallest d certified by the positive-weight sandwich bound:
// 2^6 |E|^6 / eps^4.
double lemma3_d(std::size_t edge_count, double eps);

// Threshold the missing-data lower bound needs d to exceed strictly:
// 8 |E|^(7/2) / eps^2 + |E|^(1/2).
double lemma6_threshold(std::size_t edge_count, double eps);

// M = [M_b 0; 0 d I_Z], W = [1 B1; B2 I_Z] with selector blocks indexed by
// the zero entries of M_b in row-major order.
ReductionInstance build_md1d(const BipartiteGraph& g, double d);

enum class WitnessSide { kUseV, kUseU };

struct WitnessParams {
  double k = 1.0;  // exponent K >= 1
  WitnessSide side = WitnessSide::kUseV;
};

// K with 2 Z d^(2(1-K)) = 1e-9.
double default_witness_exponent(double d, std::size_t zero_count);

// Binary indicators of `b` on the graph block plus the d^K / d^(1-K)
// selector coordinates.
FactorPair md1d_witness(const ReductionInstance& inst, const Biclique& b,
                        const WitnessParams& params);

// r disconnected copies of the graph with weights 1 on edges and d elsewhere.
ReductionInstance build_block_rank_r(const BipartiteGraph& g, std::size_t r, double d);

// Reduction of a rank-one weighted problem W = s t^T to an unweighted one.
class RankOneWeightReduction {
 public:
  RankOneWeightReduction(const Matrix& m, std::span<const double> s, std::span<const double> t);

  // M'_ij = sqrt(s_i t_j) M_ij.
  const Matrix& reduced() const noexcept { return reduced_; }
  const WeightMatrix& weights() const noexcept { return weights_; }

  // Rows of U' divided by sqrt(s_i), rows of V' by sqrt(t_j).
  FactorPair back_map(const FactorPair& reduced_factors) const;

 private:
  Matrix reduced_;
  WeightMatrix weights_;
  Vector sqrt_s_;
  Vector sqrt_t_;
};

// W' = W / d: every objective value scales by exactly 1/d.
ReductionInstance rescale_theorem1(const ReductionInstance& inst);

// M' = M / d: objective of (u, v/d) on M' equals objective of (u, v) on M
// divided by d^2.
ReductionInstance rescale_theorem2(const ReductionInstance& inst);

// Quadratic-penalty form of the biclique problem,
// sum_F (1 - u_i v_j)^2 + d sum_Fbar (u_i v_j)^2.
double penalty_objective(const BipartiteGraph& g, double d, std::span<const double> u,
                         std::span<const double> v);

}  // namespace wlra

#endif  // WLRA_REDUCTIONS_HPP_
