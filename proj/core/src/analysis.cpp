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

#include "wlra/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "json.hpp"
#include "wlra/error.hpp"
#include "wlra/solver.hpp"

namespace wlra {
namespace {

// Relative slack that absorbs rounding in the final comparisons.
constexpr double kSlack = 1e-12;

bool leq(double a, double b) { return a <= b + kSlack * (1.0 + std::abs(b)); }
bool gt(double a, double b) { return a > b - kSlack * (1.0 + std::abs(b)); }

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    fail(ErrorKind::kParameter, "eps must lie in (0, 1], got " + std::to_string(eps));
  }
}

void check_c(double c) {
  if (!(c > 0.0 && c <= 1.0)) {
    fail(ErrorKind::kParameter, "c must lie in (0, 1], got " + std::to_string(c));
  }
}

void require_kind(const ReductionInstance& inst, InstanceKind kind) {
  if (inst.kind != kind || inst.rescaling != Rescaling::kNone) {
    fail(ErrorKind::kParameter, "check needs an unscaled " + std::string(to_string(kind)) +
                                    " instance, got " + std::string(to_string(inst.kind)));
  }
}

void require_sizes(const ReductionInstance& inst, std::span<const double> u,
                   std::span<const double> v) {
  if (u.size() != inst.m.rows() || v.size() != inst.m.cols()) {
    fail(ErrorKind::kDimension, "factor lengths do not match the instance");
  }
}

BoundReport make_report(std::string name, bool hypothesis_ok, double lhs, double rhs,
                        bool satisfied, double margin) {
  return {std::move(name), hypothesis_ok, lhs, rhs, satisfied, margin};
}

}  // namespace

std::string to_json_line(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["satisfied"] = r.satisfied;
  j["margin"] = r.margin;
  return j.dump();
}

void write_json_lines(std::ostream& out, std::span<const BoundReport> reports) {
  for (const auto& r : reports) out << to_json_line(r) << '\n';
}

double alpha_constant(std::size_t edge_count, double d) {
  if (!(d > 0.0)) fail(ErrorKind::kParameter, "d must be positive");
  const double e = static_cast<double>(edge_count);
  return std::pow(4.0 * e * e / d, 0.25);
}

double beta_constant(std::size_t edge_count, double d) {
  const double e = static_cast<double>(edge_count);
  if (!(d > std::sqrt(e))) fail(ErrorKind::kParameter, "beta needs d > sqrt(|E|)");
  return std::sqrt(2.0) * std::pow(e, 0.75) / std::sqrt(d - std::sqrt(e));
}

Biclique omega_c(std::span<const double> u, std::span<const double> v, double c) {
  Biclique b;
  std::vector<bool> cols(v.size(), false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    bool row = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (std::abs(u[i] * v[j]) > c) {
        row = true;
        cols[j] = true;
      }
    }
    if (row) b.rows.push_back(i);
  }
  for (std::size_t j = 0; j < v.size(); ++j)
    if (cols[j]) b.cols.push_back(j);
  return b;
}

Biclique extract_biclique(const BipartiteGraph& g, std::span<const double> u,
                          std::span<const double> v, double c) {
  check_c(c);
  if (u.size() != g.s() || v.size() != g.t()) {
    fail(ErrorKind::kDimension, "factor lengths do not match the graph");
  }
  Biclique b = omega_c(u, v, c);
  if (!is_biclique(g, b)) {
    fail(ErrorKind::kConstraint, "extracted set " + to_string(b) +
                                     " covers a non-edge; c is too small for this pair");
  }
  return b;
}

double zero_entry_product_bound(const BipartiteGraph& g, std::span<const double> u,
                                std::span<const double> v) {
  if (u.size() < g.s() || v.size() < g.t()) {
    fail(ErrorKind::kDimension, "factors shorter than the graph");
  }
  const double max_u = [&] {
    double x = 0.0;
    for (std::size_t p = 0; p < g.s(); ++p) x = std::max(x, std::abs(u[p]));
    return x;
  }();
  const double max_v = [&] {
    double x = 0.0;
    for (std::size_t k = 0; k < g.t(); ++k) x = std::max(x, std::abs(v[k]));
    return x;
  }();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.s(); ++i) {
    for (std::size_t j = 0; j < g.t(); ++j) {
      if (g.has_edge(i, j)) continue;
      const double row = std::abs(u[i]) * max_v;
      const double col = max_u * std::abs(v[j]);
      worst = std::max(worst, std::min(row, col));
    }
  }
  return worst;
}

BoundReport check_lemma1(const ReductionInstance& inst, std::span<const double> u,
                         std::span<const double> v) {
  require_kind(inst, InstanceKind::kPositiveWeight);
  require_sizes(inst, u, v);
  const std::size_t e = inst.source.edge_count();
  const double objective = wlra_objective(inst.m, inst.w, u, v);
  const double lhs = zero_entry_product_bound(inst.source, u, v);
  const double rhs = alpha_constant(e, inst.d);
  return make_report("w1d_zero_entry_bound", objective <= static_cast<double>(e), lhs, rhs,
                     leq(lhs, rhs), rhs - lhs);
}

BoundReport check_lemma2(const BipartiteGraph& g, const WeightMatrix& w,
                         std::span<const double> u, std::span<const double> v, double c) {
  check_c(c);
  if (w.rows() != g.s() || w.cols() != g.t()) {
    fail(ErrorKind::kDimension, "weights do not match the graph");
  }
  if (u.size() != g.s() || v.size() != g.t()) {
    fail(ErrorKind::kDimension, "factor lengths do not match the graph");
  }
  bool unit_on_edges = true;
  for (std::size_t i = 0; i < g.s(); ++i)
    for (std::size_t j = 0; j < g.t(); ++j)
      if (g.has_edge(i, j) && w(i, j) != 1.0) unit_on_edges = false;
  const bool products_ok = zero_entry_product_bound(g, u, v) <= c;
  const double p = static_cast<double>(max_edge_biclique(g).optimum);
  const double objective = wlra_objective(g.biadjacency(), w, u, v);
  const bool hypothesis = unit_on_edges && products_ok;
  if (p == 0.0) {
    return make_report("biclique_lower_bound", hypothesis, 0.0, objective, true, objective);
  }
  const double lhs = p * (1.0 - 2.0 * c);
  return make_report("biclique_lower_bound", hypothesis, lhs, objective, gt(objective, lhs),
                     objective - lhs);
}

BoundReport check_lemma3_sandwich(const ReductionInstance& inst, double eps, double p_best,
                                  std::span<const double> candidate_objectives) {
  require_kind(inst, InstanceKind::kPositiveWeight);
  check_eps(eps);
  const std::size_t e = inst.source.edge_count();
  const double p = static_cast<double>(max_edge_biclique(inst.source).optimum);
  const bool hypothesis = e == 0 || inst.d >= lemma3_d(e, eps);
  double lowest = p_best;
  for (double f : candidate_objectives) lowest = std::min(lowest, f);
  const bool upper = leq(p_best, p);
  const bool lower = gt(lowest, p - eps);
  return make_report("w1d_sandwich", hypothesis, p - eps, lowest, upper && lower,
                     std::min(lowest - (p - eps), p - p_best));
}

std::size_t recover_biclique_count(std::size_t edge_count, double p_bar, double eps) {
  check_eps(eps);
  if (!std::isfinite(p_bar) || p_bar < 0.0) {
    fail(ErrorKind::kParameter, "p_bar must be a finite nonnegative value");
  }
  const double count = static_cast<double>(edge_count) - std::ceil(p_bar + eps) + 1.0;
  if (count < 0.0 || count > static_cast<double>(edge_count)) {
    fail(ErrorKind::kInconsistency,
         "recovered biclique size " + std::to_string(count) + " lies outside [0, " +
             std::to_string(edge_count) + "]; p_bar is not within the required accuracy");
  }
  return static_cast<std::size_t>(count);
}

BoundReport check_lemma5(const ReductionInstance& inst, std::span<const double> u,
                         std::span<const double> v) {
  require_kind(inst, InstanceKind::kMissingData);
  require_sizes(inst, u, v);
  const std::size_t e = inst.source.edge_count();
  const double objective = wlra_objective(inst.m, inst.w, u, v);
  const bool d_ok = inst.d > std::sqrt(static_cast<double>(e));
  const double lhs = zero_entry_product_bound(inst.source, u, v);
  const double rhs = d_ok ? beta_constant(e, inst.d) : std::numeric_limits<double>::infinity();
  return make_report("md1d_zero_entry_bound", d_ok && objective <= static_cast<double>(e), lhs,
                     rhs, leq(lhs, rhs), rhs - lhs);
}

std::vector<BoundReport> check_lemma6(const ReductionInstance& inst, double eps,
                                      std::span<const FactorPair> candidates,
                                      const WitnessParams& witness) {
  require_kind(inst, InstanceKind::kMissingData);
  check_eps(eps);
  const std::size_t e = inst.source.edge_count();
  const auto oracle = max_edge_biclique(inst.source);
  const double p = static_cast<double>(oracle.optimum);
  const bool hypothesis = e == 0 || inst.d > lemma6_threshold(e, eps);

  const FactorPair wit = md1d_witness(inst, oracle.best, witness);
  const double witness_objective = wlra_objective(inst.m, inst.w, wit);
  double lowest = witness_objective;
  for (const auto& f : candidates) lowest = std::min(lowest, wlra_objective(inst.m, inst.w, f));

  const double z = static_cast<double>(inst.zero_count());
  const double upper = p + 2.0 * z * std::pow(inst.d, 2.0 * (1.0 - witness.k));
  return {
      make_report("md1d_lower_bound", hypothesis, p - eps, lowest, gt(lowest, p - eps),
                  lowest - (p - eps)),
      make_report("md1d_witness_upper_bound", true, witness_objective, upper,
                  leq(witness_objective, upper), upper - witness_objective),
  };
}

std::vector<FactorPair> sample_feasible_candidates(const ReductionInstance& inst,
                                                   std::size_t count, std::uint64_t seed) {
  if (inst.rank != 1 || inst.rescaling != Rescaling::kNone ||
      inst.kind == InstanceKind::kBlockRankR) {
    fail(ErrorKind::kParameter, "sampling needs an unscaled rank-one instance");
  }
  const double limit = static_cast<double>(inst.source.edge_count());
  const std::size_t m = inst.m.rows();
  const std::size_t n = inst.m.cols();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<Biclique> bicliques = maximal_bicliques(inst.source);
  bicliques.push_back(Biclique{});
  const bool missing = inst.kind == InstanceKind::kMissingData;

  SolveConfig short_run;
  short_run.extrapolate = false;
  short_run.starts = 1;

  std::vector<FactorPair> out;
  out.reserve(count);
  const std::size_t budget = 200 * count + 1000;
  for (std::size_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
    Vector u(m), v(n);
    switch (attempt % 3) {
      case 0:
        for (double& x : u) x = box(rng);
        for (double& x : v) x = box(rng);
        break;
      case 1: {
        const auto& b = bicliques[static_cast<std::size_t>(unit(rng) * bicliques.size()) %
                                  bicliques.size()];
        FactorPair base;
        if (missing) {
          WitnessParams params;
          params.k = 1.0 + unit(rng);
          params.side = unit(rng) < 0.5 ? WitnessSide::kUseV : WitnessSide::kUseU;
          base = md1d_witness(inst, b, params);
        } else {
          const auto [ub, vb] = indicator_vectors(inst.source, b);
          base = FactorPair::rank_one(ub, vb);
        }
        u = base.u_column();
        v = base.v_column();
        const double gamma = std::exp(2.0 * unit(rng) - 1.0);
        const double sigma = std::pow(10.0, -12.0 + 11.5 * unit(rng));
        for (double& x : u) x = gamma * (x * (1.0 + sigma * normal(rng)) + sigma * normal(rng));
        for (double& x : v) x = (x * (1.0 + sigma * normal(rng)) + sigma * normal(rng)) / gamma;
        break;
      }
      default: {
        for (double& x : u) x = 2.0 * unit(rng) - 1.0;
        v = closed_form_v(inst.m, inst.w, u);
        short_run.max_sweeps = 1 + static_cast<std::size_t>(unit(rng) * 10.0);
        const auto r = solve_rank_one_from(inst.m, inst.w, u, v, short_run);
        u = r.factors.u_column();
        v = r.factors.v_column();
        break;
      }
    }
    const double f = wlra_objective(inst.m, inst.w, u, v);
    if (std::isfinite(f) && f <= limit) out.push_back(FactorPair::rank_one(u, v));
  }
  return out;
}

}  // namespace wlra
