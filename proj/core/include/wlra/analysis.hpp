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

// Certificates for the biclique reductions: bicliques read off factor
// pairs, the zero-entry product bounds, the lower/upper sandwiches on the
// optimal value, and the formula recovering the maximum biclique size.

#ifndef WLRA_ANALYSIS_HPP_
#define WLRA_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wlra/biclique.hpp"
#include "wlra/reductions.hpp"

namespace wlra {

struct BoundReport {
  std::string name;
  bool hypothesis_ok = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double margin = 0.0;

  // A check fails only when its hypothesis holds and the comparison does not.
  bool holds() const noexcept { return !hypothesis_ok || satisfied; }
};

// One JSON object per line with the fields above.
std::string to_json_line(const BoundReport& report);
void write_json_lines(std::ostream& out, std::span<const BoundReport> reports);

// alpha = (4 |E|^2 / d)^(1/4).
double alpha_constant(std::size_t edge_count, double d);
// beta = sqrt(2) |E|^(3/4) / (d - sqrt(|E|))^(1/2); requires d > sqrt(|E|).
double beta_constant(std::size_t edge_count, double d);

// Rows i with |u_i v_j| > c for some j, and columns j with |u_i v_j| > c for some i.
Biclique omega_c(std::span<const double> u, std::span<const double> v, double c);

// omega_c on the graph coordinates; throws kConstraint if the result covers
// a non-edge (c too small for this pair).
Biclique extract_biclique(const BipartiteGraph& g, std::span<const double> u,
                          std::span<const double> v, double c);

// Largest value over non-edges (i, j) of
// min(max_k |u_i v_k|, max_p |u_p v_j|), maxima over the first t entries of
// v and the first s entries of u. Zero when the graph has no non-edge.
double zero_entry_product_bound(const BipartiteGraph& g, std::span<const double> u,
                                std::span<const double> v);

// Positive-weight instance: once the objective is at most |E|, every
// non-edge has a row or column of u v^T bounded by alpha.
BoundReport check_lemma1(const ReductionInstance& inst, std::span<const double> u,
                         std::span<const double> v);

// Squared-form lower bound objective > p (1 - 2c) for pairs whose products
// obey the zero-entry bound c; p = |E| - |E*| from the exhaustive oracle.
BoundReport check_lemma2(const BipartiteGraph& g, const WeightMatrix& w,
                         std::span<const double> u, std::span<const double> v, double c);

// p - eps < every candidate objective, and p_best <= p.
BoundReport check_lemma3_sandwich(const ReductionInstance& inst, double eps, double p_best,
                                  std::span<const double> candidate_objectives);

// |E| - ceil(p_bar + eps) + 1; throws kInconsistency when the result falls
// outside [0, |E|], which signals that p_bar was not accurate enough.
std::size_t recover_biclique_count(std::size_t edge_count, double p_bar, double eps);

// Missing-data instance: zero-entry bound beta for pairs with objective <= |E|.
BoundReport check_lemma5(const ReductionInstance& inst, std::span<const double> u,
                         std::span<const double> v);

// Missing-data instance: the lower bound p - eps over the candidates and the
// witness upper bound p + 2 Z d^(2(1-K)) for a maximum biclique.
std::vector<BoundReport> check_lemma6(const ReductionInstance& inst, double eps,
                                      std::span<const FactorPair> candidates,
                                      const WitnessParams& witness);

// Draws `count` rank-one pairs with objective <= |E| on an unscaled rank-one
// instance, mixing uniform [-2, 2] draws, perturbed biclique indicators (or
// witnesses) and a few sweeps of alternating minimization. May return fewer
// pairs if the attempt budget runs out.
std::vector<FactorPair> sample_feasible_candidates(const ReductionInstance& inst,
                                                   std::size_t count, std::uint64_t seed = 42);

}  // namespace wlra

#endif  // WLRA_ANALYSIS_HPP_
