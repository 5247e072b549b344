#pragma once

#include "qgraph/graph.hpp"
#include "qgraph/series.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace qgraph {

struct ArithmeticOverflow : SeriesError {
  using SeriesError::SeriesError;
};

enum class Method { Auto, Enumerate, TreeDp };

namespace detail_gs {

// All coefficients in these computations are nonnegative integers
// (products and sums of partition counts), bounded by the coefficients
// of (q)_inf^{-r} at the working order; they fit comfortably in 64 bits
// at the orders used here. Overflow is checked anyway.
inline std::int64_t cadd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 add overflow");
  return r;
}

inline std::int64_t cmul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 mul overflow");
  return r;
}

using IVec = std::vector<std::int64_t>;

/// rows[m][e] = coefficient of q^e in 1/(q)_m = #partitions of e into
/// parts of size <= m, for e = 0..W.
inline std::vector<IVec> partition_rows(std::int64_t mmax, std::int64_t W) {
  std::vector<IVec> rows;
  rows.reserve(static_cast<std::size_t>(mmax + 1));
  IVec row(static_cast<std::size_t>(W + 1), 0);
  row[0] = 1;
  rows.push_back(row);
  for (std::int64_t m = 1; m <= mmax; ++m) {
    for (std::int64_t e = m; e <= W; ++e)
      row[static_cast<std::size_t>(e)] =
          cadd(row[static_cast<std::size_t>(e)], row[static_cast<std::size_t>(e - m)]);
    rows.push_back(row);
  }
  return rows;
}

struct ScaledSpec {
  int r = 0;
  std::vector<std::vector<int>> C;
  std::vector<std::int64_t> s;     // scaled linear shifts L*b_i
  std::vector<std::int64_t> loop;  // scaled loop terms L*C_ii/2
  std::vector<std::int64_t> off;   // denominator offsets
  std::int64_t L = 1;              // lattice denominator
  std::int64_t NS = 0;             // scaled truncation order
  std::int64_t W = 0;              // NS / L, cap for integer-lattice data
  std::vector<IVec> rows;          // 1/(q)_m on the integer lattice

  ScaledSpec(const GraphSeriesSpec& spec, const Rat& N) {
    spec.validate();
    r = spec.graph.r;
    C = spec.graph.C;
    L = 1;
    for (const Rat& bi : spec.b)
      L = std::lcm(L, static_cast<std::int64_t>(boost::multiprecision::denominator(bi)));
    {
      Rat ns = N * L;
      Int num = boost::multiprecision::numerator(ns);
      Int den = boost::multiprecision::denominator(ns);
      Int q = num / den;
      if (num < 0 && q * den != num) q -= 1;
      NS = static_cast<std::int64_t>(q);
    }
    if (NS < 0) throw SpecViolation("negative truncation order");
    W = NS / L;
    s.resize(static_cast<std::size_t>(r));
    loop.resize(static_cast<std::size_t>(r));
    off.resize(static_cast<std::size_t>(r));
    std::int64_t max_off = 0;
    for (int i = 0; i < r; ++i) {
      Rat si = spec.b[static_cast<std::size_t>(i)] * L;
      s[static_cast<std::size_t>(i)] =
          static_cast<std::int64_t>(boost::multiprecision::numerator(si));
      loop[static_cast<std::size_t>(i)] =
          L * (C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] / 2);
      off[static_cast<std::size_t>(i)] = spec.offset(i);
      max_off = std::max(max_off, off[static_cast<std::size_t>(i)]);
    }
    rows = partition_rows(W + max_off, W);
  }

  const IVec& row(std::int64_t m) const { return rows[static_cast<std::size_t>(m)]; }
};

/// res[E + L*e] += P[e], P on the integer lattice, res on the scaled one.
inline void flush(IVec& res, const IVec& P, std::int64_t E, std::int64_t L, std::int64_t NS) {
  for (std::size_t e = 0; e < P.size(); ++e) {
    if (P[e] == 0) continue;
    std::int64_t pos = E + L * static_cast<std::int64_t>(e);
    if (pos > NS) break;
    res[static_cast<std::size_t>(pos)] = cadd(res[static_cast<std::size_t>(pos)], P[e]);
  }
}

/// c = a * b on the integer lattice, truncated at exponent W.
inline IVec conv(const IVec& a, const IVec& b, std::int64_t W) {
  IVec c(static_cast<std::size_t>(W + 1), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<std::int64_t>(i) > W) break;
    if (a[i] == 0) continue;
    std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(W + 1 - i));
    for (std::size_t j = 0; j < jmax; ++j) {
      if (b[j] == 0) continue;
      c[i + j] = cadd(c[i + j], cmul(a[i], b[j]));
    }
  }
  return c;
}

class Enumerator {
 public:
  Enumerator(const ScaledSpec& sp) : sp_(sp), res_(static_cast<std::size_t>(sp.NS + 1), 0) {
    order_nodes();
    val_.assign(static_cast<std::size_t>(sp_.r), 0);
  }

  IVec run() {
    IVec P(static_cast<std::size_t>(sp_.W + 1), 0);
    P[0] = 1;
    dfs(0, 0, P);
    return std::move(res_);
  }

 private:
  // Greedy order: start at a max-degree node, then always take the node
  // with the most edges into the assigned set, so quadratic pruning
  // kicks in as early as possible.
  void order_nodes() {
    int r = sp_.r;
    std::vector<int> deg(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (j != i) deg[static_cast<std::size_t>(i)] += sp_.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    for (int k = 0; k < r; ++k) {
      int best = -1, best_in = -1, best_deg = -1;
      for (int i = 0; i < r; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        int in = 0;
        for (int j : ord_) in += sp_.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (in > best_in || (in == best_in && deg[static_cast<std::size_t>(i)] > best_deg)) {
          best = i;
          best_in = in;
          best_deg = deg[static_cast<std::size_t>(i)];
        }
      }
      ord_.push_back(best);
      used[static_cast<std::size_t>(best)] = true;
    }
  }

  void dfs(int k, std::int64_t E, const IVec& P) {
    if (k == sp_.r) {
      flush(res_, P, E, sp_.L, sp_.NS);
      return;
    }
    int node = ord_[static_cast<std::size_t>(k)];
    std::int64_t coupling = 0;  // sum of c_{node,j} * n_j over assigned j
    for (int t = 0; t < k; ++t) {
      int j = ord_[static_cast<std::size_t>(t)];
      coupling += static_cast<std::int64_t>(sp_.C[static_cast<std::size_t>(node)][static_cast<std::size_t>(j)]) *
                  val_[static_cast<std::size_t>(j)];
    }
    std::int64_t sn = sp_.s[static_cast<std::size_t>(node)];
    std::int64_t ln = sp_.loop[static_cast<std::size_t>(node)];
    for (std::int64_t v = 0;; ++v) {
      // exponent added by n_node = v; increasing in v since s >= L >= 1
      std::int64_t d = cadd(cmul(sn, v), cadd(cmul(sp_.L, cmul(coupling, v)), cmul(ln, cmul(v, v))));
      std::int64_t E2 = E + d;
      if (E2 > sp_.NS) break;
      val_[static_cast<std::size_t>(node)] = v;
      std::int64_t W2 = (sp_.NS - E2) / sp_.L;
      std::int64_t m = v + sp_.off[static_cast<std::size_t>(node)];
      if (m == 0) {
        dfs(k + 1, E2, P);
      } else {
        IVec P2 = conv(P, sp_.row(m), W2);
        dfs(k + 1, E2, P2);
      }
    }
    val_[static_cast<std::size_t>(node)] = 0;
  }

  const ScaledSpec& sp_;
  IVec res_;
  std::vector<int> ord_;
  std::vector<std::int64_t> val_;
};

/// Forest evaluator over a subset of nodes with (possibly shifted)
/// scaled linear terms. Message passing: each node, conditioned on its
/// parent's value m, contributes
///   M_j(m) = sum_n q^{L c_{ij} n m + s_j n + loop_j n^2} / (q)_{n+off_j}
///            * prod_children M_child(n).
class ForestEval {
 public:
  ForestEval(const ScaledSpec& sp, const std::vector<std::int64_t>& s, std::vector<bool> active)
      : sp_(sp), s_(s), active_(std::move(active)) {}

  /// Scaled-lattice coefficients of the product over all components.
  IVec run() {
    IVec acc(static_cast<std::size_t>(sp_.NS + 1), 0);
    acc[0] = 1;
    std::vector<bool> seen(static_cast<std::size_t>(sp_.r), false);
    for (int i = 0; i < sp_.r; ++i) {
      if (!active_[static_cast<std::size_t>(i)] || seen[static_cast<std::size_t>(i)]) continue;
      mark_component(i, seen);
      IVec comp = root_sum(i, -1);
      acc = scaled_conv(acc, comp);
    }
    return acc;
  }

 private:
  void mark_component(int i, std::vector<bool>& seen) {
    seen[static_cast<std::size_t>(i)] = true;
    for (int j = 0; j < sp_.r; ++j)
      if (j != i && active_[static_cast<std::size_t>(j)] && !seen[static_cast<std::size_t>(j)] &&
          sp_.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0)
        mark_component(j, seen);
  }

  IVec scaled_conv(const IVec& a, const IVec& b) const {
    IVec c(static_cast<std::size_t>(sp_.NS + 1), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      std::size_t jmax = std::min(b.size(), static_cast<std::size_t>(sp_.NS + 1 - i));
      for (std::size_t j = 0; j < jmax; ++j)
        if (b[j] != 0) c[i + j] = cadd(c[i + j], cmul(a[i], b[j]));
    }
    return c;
  }

  /// T_j(n): everything below j given n_j = n, without j's own exponent.
  IVec subtree_factor(int j, int parent, std::int64_t n) const {
    IVec T(static_cast<std::size_t>(sp_.NS + 1), 0);
    const IVec& row = sp_.row(n + sp_.off[static_cast<std::size_t>(j)]);
    for (std::size_t e = 0; e < row.size(); ++e) {
      std::int64_t pos = sp_.L * static_cast<std::int64_t>(e);
      if (pos > sp_.NS) break;
      T[static_cast<std::size_t>(pos)] = row[e];
    }
    for (int c = 0; c < sp_.r; ++c) {
      if (c == j || c == parent || !active_[static_cast<std::size_t>(c)]) continue;
      if (sp_.C[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] == 0) continue;
      T = scaled_conv(T, message(c, j, n));
    }
    return T;
  }

  /// Sum over n_j with parent value m folded into the exponent.
  IVec message(int j, int parent, std::int64_t m) const {
    std::int64_t cpl = sp_.C[static_cast<std::size_t>(j)][static_cast<std::size_t>(parent)];
    IVec M(static_cast<std::size_t>(sp_.NS + 1), 0);
    for (std::int64_t n = 0;; ++n) {
      std::int64_t d = cadd(cmul(s_[static_cast<std::size_t>(j)], n),
                            cadd(cmul(sp_.L, cmul(cpl, cmul(n, m))),
                                 cmul(sp_.loop[static_cast<std::size_t>(j)], cmul(n, n))));
      if (d > sp_.NS) break;
      IVec T = subtree_factor(j, parent, n);
      for (std::size_t e = 0; e + static_cast<std::size_t>(d) < M.size(); ++e)
        if (T[e] != 0)
          M[e + static_cast<std::size_t>(d)] = cadd(M[e + static_cast<std::size_t>(d)], T[e]);
    }
    return M;
  }

  IVec root_sum(int j, int parent) const {
    IVec M(static_cast<std::size_t>(sp_.NS + 1), 0);
    for (std::int64_t n = 0;; ++n) {
      std::int64_t d = cadd(cmul(s_[static_cast<std::size_t>(j)], n),
                            cmul(sp_.loop[static_cast<std::size_t>(j)], cmul(n, n)));
      if (d > sp_.NS) break;
      IVec T = subtree_factor(j, parent, n);
      for (std::size_t e = 0; e + static_cast<std::size_t>(d) < M.size(); ++e)
        if (T[e] != 0)
          M[e + static_cast<std::size_t>(d)] = cadd(M[e + static_cast<std::size_t>(d)], T[e]);
    }
    return M;
  }

  const ScaledSpec& sp_;
  const std::vector<std::int64_t>& s_;
  std::vector<bool> active_;
};

inline int cycle_rank(const Graph& g) {
  int edges = 0;
  for (auto [i, j] : g.edge_pairs())
    if (i != j) ++edges;
  // components via union-find
  std::vector<int> parent(static_cast<std::size_t>(g.r));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] =
                                                         parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [i, j] : g.edge_pairs())
    if (i != j) parent[static_cast<std::size_t>(find(i))] = find(j);
  int comps = 0;
  for (int i = 0; i < g.r; ++i)
    if (find(i) == i) ++comps;
  return edges - g.r + comps;
}

/// A node on the unique cycle of a unicyclic graph: strip leaves until
/// only the cycle remains, then pick any survivor.
inline int cycle_vertex(const Graph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.r), 0);
  std::vector<bool> alive(static_cast<std::size_t>(g.r), true);
  for (auto [i, j] : g.edge_pairs())
    if (i != j) {
      ++deg[static_cast<std::size_t>(i)];
      ++deg[static_cast<std::size_t>(j)];
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < g.r; ++i) {
      if (!alive[static_cast<std::size_t>(i)] || deg[static_cast<std::size_t>(i)] != 1) continue;
      alive[static_cast<std::size_t>(i)] = false;
      changed = true;
      for (int j = 0; j < g.r; ++j)
        if (j != i && alive[static_cast<std::size_t>(j)] &&
            g.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0)
          --deg[static_cast<std::size_t>(j)];
      deg[static_cast<std::size_t>(i)] = 0;
    }
  }
  for (int i = 0; i < g.r; ++i)
    if (alive[static_cast<std::size_t>(i)] && deg[static_cast<std::size_t>(i)] >= 2) return i;
  throw UnsupportedTopology("no cycle vertex found");
}

inline Series finish(const ScaledSpec& sp, const IVec& res, const GraphSeriesSpec& spec) {
  std::vector<Rat> c(res.size());
  for (std::size_t i = 0; i < res.size(); ++i) c[i] = Rat(res[i]);
  Series out = Series::from_coeffs(std::move(c), 0, sp.NS, sp.L);
  if (spec.prefactor_exp != 0) out = out.shifted(spec.prefactor_exp);
  return out;
}

}  // namespace detail_gs

/// Branch-and-bound lattice enumeration of the defining multi-sum.
inline Series evaluate_enumerate(const GraphSeriesSpec& spec, const Rat& N) {
  detail_gs::ScaledSpec sp(spec, N);
  detail_gs::Enumerator en(sp);
  return detail_gs::finish(sp, en.run(), spec);
}

/// Message-passing evaluation for forests; unicyclic graphs are handled
/// by conditioning on one cycle node's value.
inline Series evaluate_tree_dp(const GraphSeriesSpec& spec, const Rat& N) {
  detail_gs::ScaledSpec sp(spec, N);
  int rank = detail_gs::cycle_rank(spec.graph);
  if (rank >= 2)
    throw UnsupportedTopology("tree-dp supports forests and unicyclic graphs only");
  std::vector<bool> active(static_cast<std::size_t>(sp.r), true);
  if (rank == 0) {
    detail_gs::ForestEval fe(sp, sp.s, active);
    return detail_gs::finish(sp, fe.run(), spec);
  }
  int j = detail_gs::cycle_vertex(spec.graph);
  active[static_cast<std::size_t>(j)] = false;
  detail_gs::IVec res(static_cast<std::size_t>(sp.NS + 1), 0);
  for (std::int64_t v = 0;; ++v) {
    std::int64_t d = sp.s[static_cast<std::size_t>(j)] * v +
                     sp.loop[static_cast<std::size_t>(j)] * v * v;
    if (d > sp.NS) break;
    // fixing n_j = v turns its quadratic couplings into linear shifts
    std::vector<std::int64_t> s2 = sp.s;
    for (int i = 0; i < sp.r; ++i)
      if (i != j)
        s2[static_cast<std::size_t>(i)] +=
            sp.L * static_cast<std::int64_t>(sp.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * v;
    detail_gs::ForestEval fe(sp, s2, active);
    detail_gs::IVec forest = fe.run();
    const detail_gs::IVec& row = sp.row(v + sp.off[static_cast<std::size_t>(j)]);
    // multiply by q^d / (q)_{v+off_j} and accumulate
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (row[e] == 0) continue;
      std::int64_t base = d + sp.L * static_cast<std::int64_t>(e);
      if (base > sp.NS) break;
      for (std::size_t f = 0; static_cast<std::int64_t>(f) + base <= sp.NS; ++f)
        if (forest[f] != 0)
          res[f + static_cast<std::size_t>(base)] =
              detail_gs::cadd(res[f + static_cast<std::size_t>(base)],
                              detail_gs::cmul(forest[f], row[e]));
    }
  }
  return detail_gs::finish(sp, res, spec);
}

inline Series evaluate(const GraphSeriesSpec& spec, const Rat& N, Method m = Method::Auto) {
  switch (m) {
    case Method::Enumerate:
      return evaluate_enumerate(spec, N);
    case Method::TreeDp:
      return evaluate_tree_dp(spec, N);
    case Method::Auto:
    default:
      if (detail_gs::cycle_rank(spec.graph) <= 1) return evaluate_tree_dp(spec, N);
      return evaluate_enumerate(spec, N);
  }
}

}  // namespace qgraph
