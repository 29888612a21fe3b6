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

// Bipartite graphs given by a 0/1 biadjacency matrix, bicliques, and
// exhaustive maximum-edge / maximal biclique oracles for small graphs.

#ifndef WLRA_BICLIQUE_HPP_
#define WLRA_BICLIQUE_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wlra/matrix.hpp"

namespace wlra {

class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  explicit BipartiteGraph(Matrix biadjacency);

  // Edges are 0-indexed (row vertex, column vertex) pairs; duplicates rejected.
  static BipartiteGraph from_edges(std::size_t s, std::size_t t,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static BipartiteGraph complete(std::size_t s, std::size_t t);
  static BipartiteGraph identity(std::size_t n);

  std::size_t s() const noexcept { return biadjacency_.rows(); }
  std::size_t t() const noexcept { return biadjacency_.cols(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t zero_count() const noexcept { return s() * t() - edges_; }
  bool has_edge(std::size_t i, std::size_t j) const noexcept { return biadjacency_(i, j) == 1.0; }
  const Matrix& biadjacency() const noexcept { return biadjacency_; }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.biadjacency_ == b.biadjacency_;
  }

 private:
  Matrix biadjacency_;
  std::size_t edges_ = 0;
};

// Row and column vertex sets, each sorted ascending (0-indexed).
struct Biclique {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t edge_count() const noexcept { return rows.size() * cols.size(); }
  bool empty() const noexcept { return edge_count() == 0; }

  friend auto operator<=>(const Biclique&, const Biclique&) = default;
};

bool is_biclique(const BipartiteGraph& g, const Biclique& b);

// |E| - edge_count(B); throws kConstraint if B covers a non-edge.
std::size_t mbp_objective(const BipartiteGraph& g, const Biclique& b);

struct MaxBicliqueResult {
  Biclique best;
  std::size_t max_edges = 0;  // |E*|
  std::size_t optimum = 0;    // |E| - |E*|
};

// Largest supported size of the smaller side for the exhaustive oracles.
inline constexpr std::size_t kMaxOracleSide = 25;

// Exhaustive over subsets of the smaller side. Ties are broken towards the
// lexicographically smallest row set, then column set.
MaxBicliqueResult max_edge_biclique(const BipartiteGraph& g);

// All bicliques with nonempty sides that are not contained in a larger one,
// sorted lexicographically.
std::vector<Biclique> maximal_bicliques(const BipartiteGraph& g);

// 0/1 indicator vectors of B's row and column sets.
std::pair<Vector, Vector> indicator_vectors(const BipartiteGraph& g, const Biclique& b);

// Human-readable form using 1-indexed vertex names, e.g. {s2,s3}x{t2,t3}.
std::string to_string(const Biclique& b);

// Edge-list format: `s t` header, then one 1-indexed `i j` pair per line.
BipartiteGraph read_graph(std::istream& in, const std::string& source);
BipartiteGraph load_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const BipartiteGraph& g);

}  // namespace wlra

#endif  // WLRA_BICLIQUE_HPP_
