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

#include "wlra/biclique.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wlra/error.hpp"

namespace wlra {

BipartiteGraph::BipartiteGraph(Matrix biadjacency) : biadjacency_(std::move(biadjacency)) {
  for (double x : biadjacency_.data()) {
    if (x != 0.0 && x != 1.0) fail(ErrorKind::kParameter, "biadjacency entries must be 0 or 1");
    if (x == 1.0) ++edges_;
  }
}

BipartiteGraph BipartiteGraph::from_edges(
    std::size_t s, std::size_t t, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (s == 0 || t == 0) fail(ErrorKind::kParameter, "graph sides must be nonempty");
  std::vector<double> data(s * t, 0.0);
  for (auto [i, j] : edges) {
    if (i >= s || j >= t) {
      fail(ErrorKind::kParameter, "edge (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") out of range");
    }
    if (data[i * t + j] != 0.0) {
      fail(ErrorKind::kParameter, "duplicate edge (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
    }
    data[i * t + j] = 1.0;
  }
  return BipartiteGraph(Matrix(s, t, std::move(data)));
}

BipartiteGraph BipartiteGraph::complete(std::size_t s, std::size_t t) {
  return BipartiteGraph(Matrix(s, t, 1.0));
}

BipartiteGraph BipartiteGraph::identity(std::size_t n) {
  return BipartiteGraph(Matrix::identity(n));
}

bool is_biclique(const BipartiteGraph& g, const Biclique& b) {
  if (!std::is_sorted(b.rows.begin(), b.rows.end()) ||
      !std::is_sorted(b.cols.begin(), b.cols.end()) ||
      std::adjacent_find(b.rows.begin(), b.rows.end()) != b.rows.end() ||
      std::adjacent_find(b.cols.begin(), b.cols.end()) != b.cols.end()) {
    return false;
  }
  for (std::size_t i : b.rows) {
    if (i >= g.s()) return false;
    for (std::size_t j : b.cols) {
      if (j >= g.t() || !g.has_edge(i, j)) return false;
    }
  }
  for (std::size_t j : b.cols)
    if (j >= g.t()) return false;
  return true;
}

std::size_t mbp_objective(const BipartiteGraph& g, const Biclique& b) {
  if (!is_biclique(g, b)) fail(ErrorKind::kConstraint, to_string(b) + " is not a biclique of the graph");
  return g.edge_count() - b.edge_count();
}

namespace {

// Neighbourhoods of the smaller side as bitsets over the larger side.
class SideIndex {
 public:
  explicit SideIndex(const BipartiteGraph& g) : rows_small_(g.s() <= g.t()) {
    small_ = rows_small_ ? g.s() : g.t();
    large_ = rows_small_ ? g.t() : g.s();
    if (small_ > kMaxOracleSide) {
      fail(ErrorKind::kCapacity, "exhaustive biclique search supports min(s,t) <= " +
                                     std::to_string(kMaxOracleSide) + ", got " +
                                     std::to_string(small_));
    }
    words_ = (large_ + 63) / 64;
    bits_.assign(small_ * words_, 0);
    for (std::size_t a = 0; a < small_; ++a) {
      for (std::size_t b = 0; b < large_; ++b) {
        const bool edge = rows_small_ ? g.has_edge(a, b) : g.has_edge(b, a);
        if (edge) bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
      }
    }
  }

  std::size_t small() const { return small_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* nbr(std::size_t a) const { return bits_.data() + a * words_; }

  std::vector<std::uint64_t> full() const {
    std::vector<std::uint64_t> all(words_, ~std::uint64_t{0});
    if (large_ % 64 != 0) all.back() = (std::uint64_t{1} << (large_ % 64)) - 1;
    return all;
  }

  static std::size_t count(const std::vector<std::uint64_t>& set) {
    std::size_t c = 0;
    for (auto w : set) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Is N(a) a superset of `set`?
  bool covers(std::size_t a, const std::vector<std::uint64_t>& set) const {
    const std::uint64_t* n = nbr(a);
    for (std::size_t w = 0; w < words_; ++w)
      if ((set[w] & ~n[w]) != 0) return false;
    return true;
  }

  Biclique make(const std::vector<std::size_t>& subset, const std::vector<std::uint64_t>& common) const {
    std::vector<std::size_t> other;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = common[w];
      while (bits != 0) {
        other.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return rows_small_ ? Biclique{subset, other} : Biclique{other, subset};
  }

 private:
  bool rows_small_;
  std::size_t small_ = 0;
  std::size_t large_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Depth-first enumeration of nonempty subsets S of the smaller side whose
// common neighbourhood is nonempty; `visit(S, N(S))` is called for each.
template <typename Visit>
void enumerate_subsets(const SideIndex& idx, Visit&& visit) {
  std::vector<std::size_t> subset;
  auto recurse = [&](auto&& self, std::size_t start, const std::vector<std::uint64_t>& common) -> void {
    for (std::size_t a = start; a < idx.small(); ++a) {
      std::vector<std::uint64_t> next(common);
      bool any = false;
      const std::uint64_t* n = idx.nbr(a);
      for (std::size_t w = 0; w < idx.words(); ++w) {
        next[w] &= n[w];
        any = any || next[w] != 0;
      }
      if (!any) continue;
      subset.push_back(a);
      visit(subset, next);
      self(self, a + 1, next);
      subset.pop_back();
    }
  };
  recurse(recurse, 0, idx.full());
}

}  // namespace

MaxBicliqueResult max_edge_biclique(const BipartiteGraph& g) {
  const SideIndex idx(g);
  MaxBicliqueResult result;
  enumerate_subsets(idx, [&](const std::vector<std::size_t>& subset,
                             const std::vector<std::uint64_t>& common) {
    const std::size_t edges = subset.size() * SideIndex::count(common);
    if (edges < result.max_edges) return;
    Biclique candidate = idx.make(subset, common);
    if (edges > result.max_edges || candidate < result.best) {
      result.max_edges = edges;
      result.best = std::move(candidate);
    }
  });
  result.optimum = g.edge_count() - result.max_edges;
  return result;
}

std::vector<Biclique> maximal_bicliques(const BipartiteGraph& g) {
  const SideIndex idx(g);
  std::vector<Biclique> out;
  enumerate_subsets(idx, [&](const std::vector<std::size_t>& subset,
                             const std::vector<std::uint64_t>& common) {
    // S is closed iff no vertex outside S is adjacent to all of N(S).
    std::size_t pos = 0;
    for (std::size_t a = 0; a < idx.small(); ++a) {
      if (pos < subset.size() && subset[pos] == a) {
        ++pos;
        continue;
      }
      if (idx.covers(a, common)) return;
    }
    out.push_back(idx.make(subset, common));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Vector, Vector> indicator_vectors(const BipartiteGraph& g, const Biclique& b) {
  Vector u(g.s(), 0.0);
  Vector v(g.t(), 0.0);
  for (std::size_t i : b.rows) u.at(i) = 1.0;
  for (std::size_t j : b.cols) v.at(j) = 1.0;
  return {std::move(u), std::move(v)};
}

std::string to_string(const Biclique& b) {
  std::ostringstream os;
  auto side = [&os](const std::vector<std::size_t>& set, char prefix) {
    os << '{';
    for (std::size_t k = 0; k < set.size(); ++k) os << (k ? "," : "") << prefix << set[k] + 1;
    os << '}';
  };
  side(b.rows, 's');
  os << 'x';
  side(b.cols, 't');
  return os.str();
}

// --- graph file format -------------------------------------------------------

namespace {

std::vector<std::size_t> parse_ints(const std::string& line, const std::string& source,
                                    std::size_t line_no) {
  std::vector<std::size_t> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    std::size_t x = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail(ErrorKind::kParse, source + ":" + std::to_string(line_no) + ": invalid integer `" +
                                  tok + "`");
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

BipartiteGraph read_graph(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = parse_ints(line, source, line_no);
  }
  if (header.size() != 2 || header[0] == 0 || header[1] == 0) {
    fail(ErrorKind::kParse, source + ":" + std::to_string(std::max<std::size_t>(line_no, 1)) +
                                ": expected header `s t` with positive integers");
  }
  const std::size_t s = header[0];
  const std::size_t t = header[1];
  std::vector<double> data(s * t, 0.0);
  while (std::getline(in, line)) {
    ++line_no;
    const auto pair = parse_ints(line, source, line_no);
    if (pair.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (pair.size() != 2) fail(ErrorKind::kParse, where + "expected `i j`");
    const auto [i, j] = std::make_pair(pair[0], pair[1]);
    if (i < 1 || i > s || j < 1 || j > t) {
      fail(ErrorKind::kParse, where + "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") out of range");
    }
    double& slot = data[(i - 1) * t + (j - 1)];
    if (slot != 0.0) {
      fail(ErrorKind::kParse, where + "duplicate edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    }
    slot = 1.0;
  }
  return BipartiteGraph(Matrix(s, t, std::move(data)));
}

BipartiteGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << g.s() << ' ' << g.t() << '\n';
  for (std::size_t i = 0; i < g.s(); ++i)
    for (std::size_t j = 0; j < g.t(); ++j)
      if (g.has_edge(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
}

}  // namespace wlra
