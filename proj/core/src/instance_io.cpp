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

#include "wlra/instance_io.hpp"

#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "wlra/error.hpp"
#include "wlra/matrix_io.hpp"

namespace wlra {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Rescaling r) {
  switch (r) {
    case Rescaling::kNone: return "none";
    case Rescaling::kWeightsOverD: return "weights_over_d";
    case Rescaling::kDataOverD: return "data_over_d";
  }
  return "none";
}

Rescaling rescaling_from_string(const std::string& name) {
  if (name == "none") return Rescaling::kNone;
  if (name == "weights_over_d") return Rescaling::kWeightsOverD;
  if (name == "data_over_d") return Rescaling::kDataOverD;
  fail(ErrorKind::kParse, "unknown rescaling `" + name + "`");
}

template <typename T>
T field(const json& meta, const char* key, const std::filesystem::path& path) {
  auto it = meta.find(key);
  if (it == meta.end()) {
    fail(ErrorKind::kParse, path.string() + ": missing field `" + key + "`");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, path.string() + ": field `" + key + "`: " + e.what());
  }
}

}  // namespace

MaskedMatrix masked_view(const ReductionInstance& inst) {
  std::vector<bool> known(inst.m.size());
  for (std::size_t i = 0; i < inst.m.rows(); ++i)
    for (std::size_t j = 0; j < inst.m.cols(); ++j)
      known[i * inst.m.cols() + j] = inst.w(i, j) > 0.0;
  return MaskedMatrix(inst.m, std::move(known));
}

void save_instance(const std::filesystem::path& dir, const ReductionInstance& inst,
                   std::optional<std::size_t> max_biclique_edges) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  if (inst.kind == InstanceKind::kMissingData) {
    save_masked_matrix(dir / "M.txt", masked_view(inst));
  } else {
    save_matrix(dir / "M.txt", inst.m);
  }
  save_matrix(dir / "W.txt", inst.w.values());

  const BipartiteGraph& g = inst.source;
  json edges = json::array();
  for (std::size_t i = 0; i < g.s(); ++i)
    for (std::size_t j = 0; j < g.t(); ++j)
      if (g.has_edge(i, j)) edges.push_back({i + 1, j + 1});
  json zeros = json::array();
  for (const auto& [i, j] : inst.zero_entries) zeros.push_back({i + 1, j + 1});

  ordered_json meta;
  meta["kind"] = std::string(to_string(inst.kind));
  meta["d"] = inst.d;
  meta["s"] = g.s();
  meta["t"] = g.t();
  meta["Z"] = inst.zero_count();
  meta["rank"] = inst.rank;
  meta["rows"] = inst.m.rows();
  meta["cols"] = inst.m.cols();
  meta["rescaling"] = std::string(to_string(inst.rescaling));
  meta["edge_count"] = g.edge_count();
  meta["edges"] = std::move(edges);
  meta["zero_entries"] = std::move(zeros);
  if (max_biclique_edges) {
    meta["max_biclique_edges"] = *max_biclique_edges;
    meta["predicted_optimum"] = g.edge_count() - *max_biclique_edges;
  }

  std::ofstream out(dir / "meta.json");
  if (!out) fail(ErrorKind::kIo, "cannot write " + (dir / "meta.json").string());
  out << meta.dump(2) << '\n';
  if (!out) fail(ErrorKind::kIo, "write failed for " + (dir / "meta.json").string());
}

ReductionInstance load_instance(const std::filesystem::path& dir) {
  const auto meta_path = dir / "meta.json";
  std::ifstream in(meta_path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + meta_path.string());
  json meta;
  try {
    meta = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, meta_path.string() + ": " + e.what());
  }

  const auto kind = instance_kind_from_string(field<std::string>(meta, "kind", meta_path));
  const auto d = field<double>(meta, "d", meta_path);
  const auto s = field<std::size_t>(meta, "s", meta_path);
  const auto t = field<std::size_t>(meta, "t", meta_path);
  const auto rank = field<std::size_t>(meta, "rank", meta_path);
  const auto rescaling = rescaling_from_string(field<std::string>(meta, "rescaling", meta_path));
  const auto edge_list =
      field<std::vector<std::pair<std::size_t, std::size_t>>>(meta, "edges", meta_path);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(edge_list.size());
  for (const auto& [i, j] : edge_list) {
    if (i == 0 || j == 0) fail(ErrorKind::kParse, meta_path.string() + ": edges are 1-indexed");
    edges.emplace_back(i - 1, j - 1);
  }
  const auto g = BipartiteGraph::from_edges(s, t, edges);

  ReductionInstance inst;
  switch (kind) {
    case InstanceKind::kPositiveWeight: inst = build_w1d(g, d); break;
    case InstanceKind::kMissingData: inst = build_md1d(g, d); break;
    case InstanceKind::kBlockRankR: inst = build_block_rank_r(g, rank, d); break;
  }
  if (rescaling == Rescaling::kWeightsOverD) inst = rescale_theorem1(inst);
  if (rescaling == Rescaling::kDataOverD) inst = rescale_theorem2(inst);

  const auto m = load_masked_matrix(dir / "M.txt");
  const auto w = load_weight_matrix(dir / "W.txt");
  const bool same_m = kind == InstanceKind::kMissingData ? m == masked_view(inst)
                                                         : m == MaskedMatrix(inst.m);
  if (!same_m || !(w == inst.w) || inst.rank != rank ||
      inst.zero_count() != field<std::size_t>(meta, "Z", meta_path)) {
    fail(ErrorKind::kInconsistency,
         dir.string() + ": stored matrices disagree with the metadata");
  }
  return inst;
}

}  // namespace wlra
