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

#include "wlra/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wlra/error.hpp"

namespace wlra {
namespace {

void check_parameter(double d, bool strictly_above_one) {
  if (!std::isfinite(d) || (strictly_above_one ? d <= 1.0 : d < 1.0)) {
    fail(ErrorKind::kParameter, std::string("reduction parameter d must be ") +
                                    (strictly_above_one ? "> 1" : ">= 1") + ", got " +
                                    std::to_string(d));
  }
  if (d > kMaxReductionParameter) {
    fail(ErrorKind::kCapacity, "reduction parameter d = " + std::to_string(d) +
                                   " exceeds 1e150");
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    fail(ErrorKind::kParameter, "eps must lie in (0, 1], got " + std::to_string(eps));
  }
}

WeightMatrix edge_weights(const Matrix& biadjacency, double d) {
  return WeightMatrix(Matrix::generate(biadjacency.rows(), biadjacency.cols(),
                                       [&](std::size_t i, std::size_t j) {
                                         return biadjacency(i, j) == 1.0 ? 1.0 : d;
                                       }));
}

}  // namespace

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kPositiveWeight: return "positive_weight";
    case InstanceKind::kMissingData: return "missing_data";
    case InstanceKind::kBlockRankR: return "block_rank_r";
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(std::string_view name) {
  if (name == "positive_weight") return InstanceKind::kPositiveWeight;
  if (name == "missing_data") return InstanceKind::kMissingData;
  if (name == "block_rank_r") return InstanceKind::kBlockRankR;
  fail(ErrorKind::kParse, "unknown instance kind `" + std::string(name) + "`");
}

ReductionInstance build_w1d(const BipartiteGraph& g, double d) {
  check_parameter(d, false);
  ReductionInstance inst;
  inst.m = g.biadjacency();
  inst.w = edge_weights(g.biadjacency(), d);
  inst.rank = 1;
  inst.d = d;
  inst.kind = InstanceKind::kPositiveWeight;
  inst.source = g;
  return inst;
}

double lemma3_d(std::size_t edge_count, double eps) {
  check_eps(eps);
  if (edge_count == 0) fail(ErrorKind::kParameter, "edge count must be positive");
  const double e = static_cast<double>(edge_count);
  return 64.0 * std::pow(e, 6) / std::pow(eps, 4);
}

double lemma6_threshold(std::size_t edge_count, double eps) {
  check_eps(eps);
  if (edge_count == 0) fail(ErrorKind::kParameter, "edge count must be positive");
  const double e = static_cast<double>(edge_count);
  return 8.0 * std::pow(e, 3.5) / (eps * eps) + std::sqrt(e);
}

ReductionInstance build_md1d(const BipartiteGraph& g, double d) {
  check_parameter(d, true);
  const std::size_t s = g.s();
  const std::size_t t = g.t();
  std::vector<std::pair<std::size_t, std::size_t>> zeros;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (!g.has_edge(i, j)) zeros.emplace_back(i, j);
  const std::size_t z = zeros.size();
  if (z == 0) {
    fail(ErrorKind::kDegenerate,
         "graph is complete bipartite (Z = 0); the biclique optimum is 0 and no "
         "missing-data instance exists");
  }
  const std::size_t rows = s + z;
  const std::size_t cols = t + z;
  if (rows * cols > kMaxInstanceEntries) {
    fail(ErrorKind::kCapacity, "missing-data instance would have " +
                                   std::to_string(rows * cols) + " entries");
  }

  std::vector<double> m(rows * cols, 0.0);
  std::vector<double> w(rows * cols, 0.0);
  auto at = [cols](std::vector<double>& a, std::size_t i, std::size_t j) -> double& {
    return a[i * cols + j];
  };
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      at(m, i, j) = g.biadjacency()(i, j);
      at(w, i, j) = 1.0;
    }
  }
  for (std::size_t k = 0; k < z; ++k) {
    const auto [i, j] = zeros[k];
    at(w, i, t + k) = 1.0;      // B1(i, k_ij)
    at(w, s + k, j) = 1.0;      // B2(k_ij, j)
    at(w, s + k, t + k) = 1.0;  // I_Z
    at(m, s + k, t + k) = d;
  }

  ReductionInstance inst;
  inst.m = Matrix(rows, cols, std::move(m));
  inst.w = WeightMatrix(Matrix(rows, cols, std::move(w)));
  inst.rank = 1;
  inst.d = d;
  inst.kind = InstanceKind::kMissingData;
  inst.source = g;
  inst.zero_entries = std::move(zeros);
  return inst;
}

double default_witness_exponent(double d, std::size_t zero_count) {
  if (!(d > 1.0)) fail(ErrorKind::kParameter, "witness exponent needs d > 1");
  if (zero_count == 0) return 1.0;
  const double z2 = 2.0 * static_cast<double>(zero_count);
  return 1.0 + (9.0 + std::log10(z2)) / (2.0 * std::log10(d));
}

FactorPair md1d_witness(const ReductionInstance& inst, const Biclique& b,
                        const WitnessParams& params) {
  if (inst.kind != InstanceKind::kMissingData || inst.rescaling != Rescaling::kNone) {
    fail(ErrorKind::kParameter, "witness requires an unscaled missing_data instance");
  }
  if (!(params.k >= 1.0) || !std::isfinite(params.k)) {
    fail(ErrorKind::kParameter, "witness exponent K must be >= 1");
  }
  if (!is_biclique(inst.source, b)) {
    fail(ErrorKind::kConstraint, to_string(b) + " is not a biclique of the source graph");
  }
  const double big = std::pow(inst.d, params.k);
  const double small = std::pow(inst.d, 1.0 - params.k);
  if (!std::isfinite(big)) {
    fail(ErrorKind::kCapacity, "d^K overflows double precision");
  }

  const std::size_t s = inst.source.s();
  const std::size_t t = inst.source.t();
  const auto [ub, vb] = indicator_vectors(inst.source, b);
  Vector u(inst.m.rows(), 0.0);
  Vector v(inst.m.cols(), 0.0);
  std::copy(ub.begin(), ub.end(), u.begin());
  std::copy(vb.begin(), vb.end(), v.begin());
  for (std::size_t k = 0; k < inst.zero_count(); ++k) {
    const auto [i, j] = inst.zero_entries[k];
    const bool on = params.side == WitnessSide::kUseV ? vb[j] == 1.0 : ub[i] == 0.0;
    // on: u-selector small, v-selector large; otherwise the reverse.
    u[s + k] = on ? small : big;
    v[t + k] = on ? big : small;
  }
  return FactorPair::rank_one(u, v);
}

ReductionInstance build_block_rank_r(const BipartiteGraph& g, std::size_t r, double d) {
  if (r == 0) fail(ErrorKind::kParameter, "rank must be positive");
  check_parameter(d, false);
  const std::size_t rows = r * g.s();
  const std::size_t cols = r * g.t();
  if (rows * cols > kMaxInstanceEntries) {
    fail(ErrorKind::kCapacity, "block instance would have " + std::to_string(rows * cols) +
                                   " entries (limit 1e7)");
  }
  const Matrix& mb = g.biadjacency();
  Matrix blocks = Matrix::generate(rows, cols, [&](std::size_t i, std::size_t j) {
    const std::size_t bi = i / g.s();
    const std::size_t bj = j / g.t();
    return bi == bj ? mb(i % g.s(), j % g.t()) : 0.0;
  });
  ReductionInstance inst;
  inst.w = edge_weights(blocks, d);
  inst.m = std::move(blocks);
  inst.rank = r;
  inst.d = d;
  inst.kind = InstanceKind::kBlockRankR;
  inst.source = g;
  return inst;
}

RankOneWeightReduction::RankOneWeightReduction(const Matrix& m, std::span<const double> s,
                                               std::span<const double> t) {
  if (s.size() != m.rows() || t.size() != m.cols()) {
    fail(ErrorKind::kDimension, "weight factors do not match the data shape");
  }
  for (double x : s)
    if (!(x > 0.0)) fail(ErrorKind::kParameter, "row weights s must be positive");
  for (double x : t)
    if (!(x > 0.0)) fail(ErrorKind::kParameter, "column weights t must be positive");
  sqrt_s_.resize(s.size());
  sqrt_t_.resize(t.size());
  for (std::size_t i = 0; i < s.size(); ++i) sqrt_s_[i] = std::sqrt(s[i]);
  for (std::size_t j = 0; j < t.size(); ++j) sqrt_t_[j] = std::sqrt(t[j]);
  reduced_ = Matrix::generate(m.rows(), m.cols(), [&](std::size_t i, std::size_t j) {
    return std::sqrt(s[i] * t[j]) * m(i, j);
  });
  weights_ = WeightMatrix(Matrix::generate(m.rows(), m.cols(), [&](std::size_t i, std::size_t j) {
    return s[i] * t[j];
  }));
}

FactorPair RankOneWeightReduction::back_map(const FactorPair& f) const {
  if (f.u().rows() != sqrt_s_.size() || f.v().rows() != sqrt_t_.size()) {
    fail(ErrorKind::kDimension, "reduced factors do not match the data shape");
  }
  Matrix u = Matrix::generate(f.u().rows(), f.rank(), [&](std::size_t i, std::size_t k) {
    return f.u()(i, k) / sqrt_s_[i];
  });
  Matrix v = Matrix::generate(f.v().rows(), f.rank(), [&](std::size_t j, std::size_t k) {
    return f.v()(j, k) / sqrt_t_[j];
  });
  return FactorPair(std::move(u), std::move(v));
}

ReductionInstance rescale_theorem1(const ReductionInstance& inst) {
  if (inst.kind != InstanceKind::kPositiveWeight || inst.rescaling != Rescaling::kNone) {
    fail(ErrorKind::kParameter, "weight rescaling applies to unscaled positive_weight instances");
  }
  ReductionInstance out = inst;
  out.w = inst.w.scaled(1.0 / inst.d);
  out.rescaling = Rescaling::kWeightsOverD;
  return out;
}

ReductionInstance rescale_theorem2(const ReductionInstance& inst) {
  if (inst.kind != InstanceKind::kMissingData || inst.rescaling != Rescaling::kNone) {
    fail(ErrorKind::kParameter, "data rescaling applies to unscaled missing_data instances");
  }
  ReductionInstance out = inst;
  out.m = inst.m.scaled(1.0 / inst.d);
  out.rescaling = Rescaling::kDataOverD;
  return out;
}

double penalty_objective(const BipartiteGraph& g, double d, std::span<const double> u,
                         std::span<const double> v) {
  if (u.size() != g.s() || v.size() != g.t()) {
    fail(ErrorKind::kDimension, "penalty factors do not match the graph");
  }
  double on_edges = 0.0;
  double off_edges = 0.0;
  for (std::size_t i = 0; i < g.s(); ++i) {
    for (std::size_t j = 0; j < g.t(); ++j) {
      const double x = u[i] * v[j];
      if (g.has_edge(i, j)) {
        on_edges += (1.0 - x) * (1.0 - x);
      } else {
        off_edges += x * x;
      }
    }
  }
  return on_edges + d * off_edges;
}

}  // namespace wlra
