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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "wlra/analysis.hpp"
#include "wlra/biclique.hpp"
#include "wlra/error.hpp"
#include "wlra/instance_io.hpp"
#include "wlra/matrix_io.hpp"
#include "wlra/reductions.hpp"

namespace wlra::cli {
namespace {

using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapacity:
    case ErrorKind::kDegenerate:
      return kExitCapacity;
    case ErrorKind::kInconsistency:
      return kExitBound;
    default:
      return kExitInput;
  }
}

template <typename Body>
RunReport guarded(std::string command, std::ostream& err, Body body) {
  RunReport report;
  report.command = std::move(command);
  try {
    body(report);
  } catch (const Error& e) {
    err << report.command << ": " << e.what() << '\n';
    report.exit_code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << report.command << ": " << e.what() << '\n';
    report.exit_code = kExitInput;
  }
  return report;
}

std::string fmt(double x) { return format_double(x, 12); }
std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "true" : "false"; }

ordered_json factor_json(const Matrix& a) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::kIo, "cannot write " + path.string());
  f << text;
  if (!f) fail(ErrorKind::kIo, "write failed for " + path.string());
}

double parse_number(const std::string& text, const std::string& what) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    fail(ErrorKind::kParse, what + ": expected a number, got `" + text + "`");
  }
  return x;
}

// Per-point reports fail only when their hypothesis holds; threshold
// reports also fail when the instance does not meet the hypothesis.
bool is_threshold_report(const BoundReport& r) {
  return r.name == "w1d_sandwich" || r.name == "md1d_lower_bound";
}

bool report_fails(const BoundReport& r) {
  if (is_threshold_report(r)) return !r.hypothesis_ok || !r.satisfied;
  return !r.holds();
}

std::vector<FactorPair> solve_candidates(const ReductionInstance& inst, const SolveConfig& cfg) {
  const MultiStartResult res = inst.rank == 1 ? solve_rank_one(inst.m, inst.w, cfg)
                                              : solve_rank_r(inst.m, inst.w, inst.rank, cfg);
  std::vector<FactorPair> out;
  for (const auto& run : res.runs) out.push_back(run.factors);
  return out;
}

FactorPair block_indicators(const ReductionInstance& inst, const Biclique& b) {
  const auto [ub, vb] = indicator_vectors(inst.source, b);
  const std::size_t s = inst.source.s();
  const std::size_t t = inst.source.t();
  Matrix u = Matrix::generate(inst.m.rows(), inst.rank, [&](std::size_t i, std::size_t k) {
    return i / s == k ? ub[i % s] : 0.0;
  });
  Matrix v = Matrix::generate(inst.m.cols(), inst.rank, [&](std::size_t j, std::size_t k) {
    return j / t == k ? vb[j % t] : 0.0;
  });
  return FactorPair(std::move(u), std::move(v));
}

}  // namespace

void RunReport::add(std::string key, std::string value) {
  summary.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> RunReport::get(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  return std::nullopt;
}

std::size_t default_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("WLRA_THREADS")) {
    std::size_t limit = 0;
    const std::string text(cap);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), limit);
    if (ec == std::errc() && ptr == text.data() + text.size() && limit > 0) {
      n = std::min(n, limit);
    }
  }
  return n;
}

RunReport cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("solve", err, [&](RunReport& report) {
    report.inputs.push_back(opts.matrix.string());
    const MaskedMatrix data = load_masked_matrix(opts.matrix);
    WeightMatrix w = data.weights();
    if (opts.weights) {
      report.inputs.push_back(opts.weights->string());
      w = load_weight_matrix(*opts.weights);
      if (w.rows() != data.rows() || w.cols() != data.cols()) {
        fail(ErrorKind::kDimension, opts.weights->string() + ": weights are " +
                                        std::to_string(w.rows()) + "x" +
                                        std::to_string(w.cols()) + " but the data is " +
                                        std::to_string(data.rows()) + "x" +
                                        std::to_string(data.cols()));
      }
      for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < data.cols(); ++j)
          if (!data.known(i, j) && w(i, j) != 0.0) {
            fail(ErrorKind::kDimension, opts.matrix.string() + ": entry (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ") is unknown but has positive weight");
          }
    }
    const Matrix& m = data.values();
    const MultiStartResult res = opts.rank == 1 ? solve_rank_one(m, w, opts.config)
                                                : solve_rank_r(m, w, opts.rank, opts.config);
    const SolveResult& best = res.best;

    report.add("objective", fmt(best.objective));
    report.add("converged", fmt(best.converged));
    report.add("diverged", fmt(best.diverged));
    report.add("sweeps", fmt(best.sweeps_used));
    report.add("start", fmt(best.start_index));
    report.add("rank", fmt(opts.rank));
    report.add("starts", fmt(opts.config.starts));

    if (opts.out) {
      ordered_json j;
      j["command"] = "solve";
      j["matrix"] = opts.matrix.string();
      if (opts.weights) j["weights"] = opts.weights->string();
      j["rank"] = opts.rank;
      j["seed"] = opts.config.seed;
      j["objective"] = best.objective;
      j["converged"] = best.converged;
      j["diverged"] = best.diverged;
      j["sweeps_used"] = best.sweeps_used;
      j["start_index"] = best.start_index;
      j["u"] = factor_json(best.factors.u());
      j["v"] = factor_json(best.factors.v());
      ordered_json runs = ordered_json::array();
      for (const auto& r : res.runs) {
        ordered_json row;
        row["start"] = r.start_index;
        row["objective"] = r.objective;
        row["sweeps"] = r.sweeps_used;
        row["converged"] = r.converged;
        row["diverged"] = r.diverged;
        runs.push_back(std::move(row));
      }
      j["runs"] = std::move(runs);
      write_text(*opts.out, j.dump(2) + "\n");
      report.outputs.push_back(opts.out->string());
    }

    for (const auto& [k, v] : report.summary) out << k << ": " << v << '\n';
    if (best.diverged) {
      out << "the infimum is approached only by diverging factors (not attained)\n";
      report.exit_code = kExitDivergence;
    }
  });
}

RunReport cmd_reduce(const ReduceOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("reduce", err, [&](RunReport& report) {
    report.inputs.push_back(opts.graph.string());
    if (opts.out.empty()) fail(ErrorKind::kParameter, "an output directory (--out) is required");
    const BipartiteGraph g = load_graph(opts.graph);
    const std::size_t e = g.edge_count();

    double d = 0.0;
    if (opts.d.rfind("auto:", 0) == 0) {
      const double eps = parse_number(opts.d.substr(5), "--d auto:<eps>");
      if (opts.kind == "md1d") {
        d = lemma6_threshold(e, eps) + 1.0;
      } else {
        d = lemma3_d(e, eps);
      }
    } else {
      d = parse_number(opts.d, "--d");
    }

    ReductionInstance inst;
    if (opts.kind == "w1d") {
      inst = build_w1d(g, d);
    } else if (opts.kind == "md1d") {
      inst = build_md1d(g, d);
    } else if (opts.kind == "block") {
      inst = build_block_rank_r(g, opts.rank, d);
    } else {
      fail(ErrorKind::kParameter, "unknown kind `" + opts.kind + "` (w1d, md1d, block)");
    }

    std::optional<std::size_t> max_edges;
    if (std::min(g.s(), g.t()) <= kMaxOracleSide) max_edges = max_edge_biclique(g).max_edges;
    save_instance(opts.out, inst, max_edges);
    report.outputs.push_back(opts.out.string());

    report.add("kind", std::string(to_string(inst.kind)));
    report.add("d", format_double(d));
    report.add("Z", fmt(inst.zero_count()));
    report.add("rows", fmt(inst.m.rows()));
    report.add("cols", fmt(inst.m.cols()));
    report.add("rank", fmt(inst.rank));
    report.add("edges", fmt(e));
    if (max_edges) {
      report.add("max_biclique_edges", fmt(*max_edges));
      const std::size_t copies = inst.kind == InstanceKind::kBlockRankR ? inst.rank : 1;
      report.add("predicted_optimum", fmt(copies * (e - *max_edges)));
    }
    for (const auto& [k, v] : report.summary) out << k << ": " << v << '\n';
  });
}

RunReport cmd_biclique(const BicliqueOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("biclique", err, [&](RunReport& report) {
    report.inputs.push_back(opts.graph.string());
    if (opts.mode != "max" && opts.mode != "maximal") {
      fail(ErrorKind::kParameter, "unknown mode `" + opts.mode + "` (max, maximal)");
    }
    const BipartiteGraph g = load_graph(opts.graph);
    const auto best = max_edge_biclique(g);
    if (opts.mode == "maximal") {
      const auto all = maximal_bicliques(g);
      for (const auto& b : all) out << to_string(b) << " edges=" << b.edge_count() << '\n';
      report.add("maximal_count", fmt(all.size()));
    } else {
      out << to_string(best.best) << '\n';
    }
    report.add("max_biclique", to_string(best.best));
    report.add("max_biclique_edges", fmt(best.max_edges));
    report.add("optimum", fmt(best.optimum));
    out << "max_biclique_edges: " << best.max_edges << '\n';
    out << "optimum: " << best.optimum << '\n';
  });
}

RunReport cmd_landscape(const LandscapeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("landscape", err, [&](RunReport& report) {
    report.inputs = {opts.matrix.string(), opts.weights.string()};
    const Matrix m = load_matrix(opts.matrix);
    const WeightMatrix w = load_weight_matrix(opts.weights);
    const auto points = landscape_grid(m, w, opts.grid);
    if (opts.out) {
      std::ofstream csv(*opts.out);
      if (!csv) fail(ErrorKind::kIo, "cannot write " + opts.out->string());
      write_landscape_csv(csv, points);
      if (!csv) fail(ErrorKind::kIo, "write failed for " + opts.out->string());
      report.outputs.push_back(opts.out->string());
    }
    const bool binary = std::all_of(m.data().begin(), m.data().end(),
                                    [](double x) { return x == 0.0 || x == 1.0; });
    const auto minima = grid_local_minima(points, opts.grid);
    report.add("points", fmt(points.size()));
    report.add("minima", fmt(minima.size()));
    out << "points: " << points.size() << '\n' << "minima: " << minima.size() << '\n';
    for (std::size_t k = 0; k < minima.size(); ++k) {
      const auto& p = minima[k];
      const Vector u{p.x, p.y, std::sqrt(std::max(0.0, 1.0 - p.x * p.x - p.y * p.y))};
      const Vector v = closed_form_v(m, w, u);
      const Biclique b = omega_c(u, v, 0.5);
      std::string label = to_string(b);
      if (binary && !is_biclique(BipartiteGraph(m), b)) label += " (not a biclique)";
      const std::string line = "x=" + fmt(p.x) + " y=" + fmt(p.y) +
                               " objective=" + fmt(p.objective) + " biclique=" + label;
      report.add("minimum_" + std::to_string(k + 1), line);
      out << "minimum " << k + 1 << ": " << line << '\n';
    }
  });
}

RunReport cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded("verify", err, [&](RunReport& report) {
    report.inputs.push_back(opts.instance.string());
    const ReductionInstance inst = load_instance(opts.instance);
    const BipartiteGraph& g = inst.source;
    const std::size_t e = g.edge_count();
    const auto oracle = max_edge_biclique(g);
    const auto maximal = maximal_bicliques(g);

    std::size_t random_count = 0;
    const std::string& mode = opts.candidates;
    if (mode.rfind("random:", 0) == 0) {
      const double n = parse_number(mode.substr(7), "--candidates random:<N>");
      if (!(n >= 1.0) || n != std::floor(n)) {
        fail(ErrorKind::kParameter, "random:<N> needs a positive integer");
      }
      random_count = static_cast<std::size_t>(n);
    } else if (mode != "witness" && mode != "indicators" && mode != "solve") {
      fail(ErrorKind::kParameter,
           "unknown candidates `" + mode + "` (witness, indicators, random:N, solve)");
    }

    // The certificate pair for the maximum biclique is always a candidate.
    const WitnessParams witness{inst.kind == InstanceKind::kMissingData
                                    ? default_witness_exponent(inst.d, inst.zero_count())
                                    : 1.0,
                                WitnessSide::kUseV};
    auto certificate = [&](const Biclique& b) {
      switch (inst.kind) {
        case InstanceKind::kMissingData: return md1d_witness(inst, b, witness);
        case InstanceKind::kBlockRankR: return block_indicators(inst, b);
        default: {
          const auto [ub, vb] = indicator_vectors(g, b);
          return FactorPair::rank_one(ub, vb);
        }
      }
    };
    std::vector<FactorPair> candidates{certificate(oracle.best)};
    if (mode == "indicators") {
      for (const auto& b : maximal) candidates.push_back(certificate(b));
    } else if (random_count > 0) {
      if (inst.kind == InstanceKind::kBlockRankR) {
        fail(ErrorKind::kParameter, "random candidates need a rank-one instance");
      }
      auto drawn = sample_feasible_candidates(inst, random_count, opts.config.seed);
      if (drawn.size() < random_count) {
        err << "verify: only " << drawn.size() << " of " << random_count
            << " feasible candidates found\n";
      }
      candidates.insert(candidates.end(), drawn.begin(), drawn.end());
    } else if (mode == "solve") {
      auto solved = solve_candidates(inst, opts.config);
      candidates.insert(candidates.end(), solved.begin(), solved.end());
    }

    std::vector<double> objectives;
    for (const auto& f : candidates) objectives.push_back(wlra_objective(inst.m, inst.w, f));
    const double p_best = *std::min_element(objectives.begin(), objectives.end());

    std::vector<BoundReport> reports;
    if (inst.kind == InstanceKind::kPositiveWeight) {
      const double alpha = alpha_constant(e, inst.d);
      for (const auto& f : candidates) {
        const Vector u = f.u_column();
        const Vector v = f.v_column();
        reports.push_back(check_lemma1(inst, u, v));
        if (alpha > 0.0 && alpha <= 1.0) reports.push_back(check_lemma2(g, inst.w, u, v, alpha));
      }
      reports.push_back(check_lemma3_sandwich(inst, opts.eps, p_best, objectives));
    } else if (inst.kind == InstanceKind::kMissingData) {
      for (const auto& f : candidates) {
        reports.push_back(check_lemma5(inst, f.u_column(), f.v_column()));
      }
      const auto battery = check_lemma6(inst, opts.eps, candidates, witness);
      reports.insert(reports.end(), battery.begin(), battery.end());
    } else {
      const double bound = static_cast<double>(inst.rank * oracle.optimum);
      reports.push_back({"block_upper_bound", true, objectives.front(), bound,
                         objectives.front() <= bound + 1e-12 * (1.0 + bound),
                         bound - objectives.front()});
    }

    const double copies = inst.kind == InstanceKind::kBlockRankR ? inst.rank : 1.0;
    if (inst.kind != InstanceKind::kBlockRankR) {
      BoundReport rec{"recovery", true, 0.0, static_cast<double>(oracle.max_edges), false, 0.0};
      try {
        const std::size_t recovered = recover_biclique_count(e, p_best, opts.eps);
        rec.lhs = static_cast<double>(recovered);
        rec.satisfied = recovered == oracle.max_edges;
        report.add("recovered_max_biclique_edges", fmt(recovered));
      } catch (const Error& ex) {
        if (ex.kind() != ErrorKind::kInconsistency) throw;
        err << "verify: " << ex.what() << '\n';
        rec.lhs = std::nan("");
      }
      rec.margin = rec.rhs - rec.lhs;
      reports.push_back(rec);
    }

    if (opts.out) {
      std::ofstream f(*opts.out);
      if (!f) fail(ErrorKind::kIo, "cannot write " + opts.out->string());
      write_json_lines(f, reports);
      report.outputs.push_back(opts.out->string());
    } else {
      write_json_lines(out, reports);
    }

    const auto failed = static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), report_fails));
    report.add("kind", std::string(to_string(inst.kind)));
    report.add("d", format_double(inst.d));
    report.add("edges", fmt(e));
    report.add("max_biclique_edges", fmt(oracle.max_edges));
    report.add("predicted_optimum", fmt(static_cast<std::size_t>(copies) * oracle.optimum));
    report.add("candidates", fmt(candidates.size()));
    report.add("best_objective", fmt(p_best));
    report.add("checks", fmt(reports.size()));
    report.add("failed", fmt(failed));
    for (const auto& [k, v] : report.summary) out << k << ": " << v << '\n';
    if (failed > 0) report.exit_code = kExitBound;
  });
}

}  // namespace wlra::cli
