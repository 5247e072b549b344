#pragma once

#include "qgraph/series.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

struct SpecViolation : SeriesError {
  using SeriesError::SeriesError;
};
struct UnknownGraph : SeriesError {
  using SeriesError::SeriesError;
};
struct UnsupportedTopology : SeriesError {
  using SeriesError::SeriesError;
};

/// Symmetric nonnegative multiplicity matrix; even diagonal so that
/// (1/2) n C n^T is always an integer.
struct Graph {
  int r = 0;
  std::vector<std::vector<int>> C;

  static Graph empty(int r) {
    Graph g;
    g.r = r;
    g.C.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
    return g;
  }

  // 0-indexed
  void add_edge(int i, int j, int mult = 1) {
    C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += mult;
    if (i != j) C[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += mult;
  }

  void validate() const {
    if (r < 0 || static_cast<int>(C.size()) != r) throw SpecViolation("bad adjacency size");
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(C[static_cast<std::size_t>(i)].size()) != r)
        throw SpecViolation("adjacency matrix not square");
      for (int j = 0; j < r; ++j) {
        int cij = C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (cij < 0) throw SpecViolation("negative edge multiplicity");
        if (cij != C[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
          throw SpecViolation("adjacency matrix not symmetric");
      }
      if (C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] % 2 != 0)
        throw SpecViolation("diagonal entries must be even");
    }
  }

  /// Distinct (unordered) node pairs with at least one edge.
  std::vector<std::pair<int, int>> edge_pairs() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j)
        if (C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0) e.emplace_back(i, j);
    return e;
  }
};

/// The summation data: exponent (1/2) n C n^T + b.n, denominator
/// (q)_{n_i + denom_offset_i}, and an optional global q^prefactor_exp.
/// denom_offset covers shifted sums whose denominators start at
/// (q)_{n_i+1}; the default graph series has all offsets 0.
struct GraphSeriesSpec {
  Graph graph;
  std::vector<Rat> b;
  std::vector<std::int64_t> denom_offset;  // empty means all zero
  Rat prefactor_exp = Rat(0);

  void validate() const {
    graph.validate();
    if (static_cast<int>(b.size()) != graph.r) throw SpecViolation("b length != node count");
    for (const Rat& bi : b)
      if (bi < 1) throw SpecViolation("b_i >= 1 required for truncation soundness");
    if (!denom_offset.empty() && static_cast<int>(denom_offset.size()) != graph.r)
      throw SpecViolation("denom_offset length != node count");
    for (std::int64_t d : denom_offset)
      if (d < 0) throw SpecViolation("denom_offset must be nonnegative");
  }

  std::int64_t offset(int i) const {
    return denom_offset.empty() ? 0 : denom_offset[static_cast<std::size_t>(i)];
  }
};

inline GraphSeriesSpec make_spec(Graph g, std::vector<Rat> b, Rat prefactor = Rat(0)) {
  GraphSeriesSpec s;
  s.graph = std::move(g);
  s.b = std::move(b);
  s.prefactor_exp = std::move(prefactor);
  s.validate();
  return s;
}

inline GraphSeriesSpec make_spec(Graph g) {
  std::vector<Rat> b(static_cast<std::size_t>(g.r), Rat(1));
  return make_spec(std::move(g), std::move(b));
}

inline Graph path_graph(int k) {
  Graph g = Graph::empty(k);
  for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int k) {
  Graph g = Graph::empty(k);
  for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
  return g;
}

inline Graph star_graph(int leaves) {
  Graph g = Graph::empty(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph from_edges(int r, const std::vector<std::array<int, 3>>& edges_1idx) {
  Graph g = Graph::empty(r);
  for (const auto& e : edges_1idx) {
    if (e[0] < 1 || e[0] > r || e[1] < 1 || e[1] > r) throw SpecViolation("edge index out of range");
    g.add_edge(e[0] - 1, e[1] - 1, e[2]);
  }
  return g;
}

/// Named graphs used throughout. All come with b = (1,...,1); callers
/// override b for coset/shifted variants.
inline GraphSeriesSpec builtin(const std::string& name) {
  auto path = [](int k) { return make_spec(path_graph(k)); };
  if (name == "A1") return path(1);
  if (name == "A2") return path(2);
  if (name == "A3") return path(3);
  if (name == "A4") return path(4);
  if (name == "A5") return path(5);
  if (name == "A6") return path(6);
  if (name == "A7") return path(7);
  if (name == "A8") return path(8);
  if (name == "C3") return make_spec(cycle_graph(3));
  if (name == "C4") return make_spec(cycle_graph(4));
  if (name == "C5") return make_spec(cycle_graph(5));
  if (name == "D4") return make_spec(star_graph(3));
  if (name == "D5") {
    // star center 1 with leaves 2,3,4 and tail 4-5 (1-indexed)
    return make_spec(from_edges(5, {{{1, 2, 1}}, {{1, 3, 1}}, {{1, 4, 1}}, {{4, 5, 1}}}));
  }
  if (name == "E6") {
    // path 2-1-3 with 1-4, 2-5, 3-6 matching the printed exponent
    return make_spec(
        from_edges(6, {{{1, 2, 1}}, {{1, 3, 1}}, {{1, 4, 1}}, {{2, 5, 1}}, {{3, 6, 1}}}));
  }
  if (name == "Gamma8") {
    return make_spec(from_edges(8, {{{1, 2, 1}},
                                    {{1, 5, 1}},
                                    {{1, 6, 1}},
                                    {{2, 3, 1}},
                                    {{2, 7, 1}},
                                    {{3, 4, 1}},
                                    {{3, 6, 1}},
                                    {{4, 5, 1}},
                                    {{6, 8, 1}},
                                    {{7, 8, 1}}}));
  }
  if (name == "B2") return make_spec(from_edges(2, {{{1, 2, 2}}}));
  if (name == "B3") return make_spec(from_edges(3, {{{1, 2, 2}}, {{2, 3, 1}}}));
  if (name == "X3") return make_spec(star_graph(3));
  if (name == "X4") return make_spec(star_graph(4));
  if (name == "X5") return make_spec(star_graph(5));
  if (name == "H") {
    // two tripods joined at their centers: 1-{2,3,4}, 4-{5,6}
    return make_spec(
        from_edges(6, {{{1, 2, 1}}, {{1, 3, 1}}, {{1, 4, 1}}, {{4, 5, 1}}, {{4, 6, 1}}}));
  }
  if (name == "T2") {
    // exponent as printed: n1n6+n2n4+n2n5+n2n6+n3n4+n3n5, node 7 isolated
    return make_spec(from_edges(
        7, {{{1, 6, 1}}, {{2, 4, 1}}, {{2, 5, 1}}, {{2, 6, 1}}, {{3, 4, 1}}, {{3, 5, 1}}}));
  }
  if (name == "T2tree") {
    // the 7-node tree drawn alongside: path 1-2-3-4-5 with 3-6 and 6-7
    return make_spec(from_edges(
        7, {{{1, 2, 1}}, {{2, 3, 1}}, {{3, 4, 1}}, {{4, 5, 1}}, {{3, 6, 1}}, {{6, 7, 1}}}));
  }
  throw UnknownGraph("unknown builtin graph: " + name);
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "A1", "A2", "A3", "A4", "A5",     "A6", "A7", "A8", "C3", "C4",     "C5", "D4", "D5",
      "E6", "Gamma8", "B2", "B3", "X3", "X4", "X5", "H",  "T2", "T2tree"};
  return names;
}

inline GraphSeriesSpec permuted(const GraphSeriesSpec& s, const std::vector<int>& perm) {
  // perm[new_index] = old_index
  int r = s.graph.r;
  Graph g = Graph::empty(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      g.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          s.graph.C[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                   [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
  GraphSeriesSpec out;
  out.graph = std::move(g);
  out.b.resize(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    out.b[static_cast<std::size_t>(i)] = s.b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  if (!s.denom_offset.empty()) {
    out.denom_offset.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
      out.denom_offset[static_cast<std::size_t>(i)] =
          s.denom_offset[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  }
  out.prefactor_exp = s.prefactor_exp;
  out.validate();
  return out;
}

inline GraphSeriesSpec disjoint_union(const GraphSeriesSpec& a, const GraphSeriesSpec& b) {
  int r = a.graph.r + b.graph.r;
  Graph g = Graph::empty(r);
  for (int i = 0; i < a.graph.r; ++i)
    for (int j = 0; j < a.graph.r; ++j)
      g.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a.graph.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  for (int i = 0; i < b.graph.r; ++i)
    for (int j = 0; j < b.graph.r; ++j)
      g.C[static_cast<std::size_t>(i + a.graph.r)][static_cast<std::size_t>(j + a.graph.r)] =
          b.graph.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  GraphSeriesSpec out;
  out.graph = std::move(g);
  out.b = a.b;
  out.b.insert(out.b.end(), b.b.begin(), b.b.end());
  if (!a.denom_offset.empty() || !b.denom_offset.empty()) {
    out.denom_offset.assign(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < a.graph.r; ++i) out.denom_offset[static_cast<std::size_t>(i)] = a.offset(i);
    for (int i = 0; i < b.graph.r; ++i)
      out.denom_offset[static_cast<std::size_t>(i + a.graph.r)] = b.offset(i);
  }
  out.prefactor_exp = a.prefactor_exp + b.prefactor_exp;
  out.validate();
  return out;
}

}  // namespace qgraph
