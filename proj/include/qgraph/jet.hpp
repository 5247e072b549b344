#pragma once

#include "qgraph/graph.hpp"
#include "qgraph/modular.hpp"
#include "qgraph/series.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

struct BudgetExceeded : SeriesError {
  using SeriesError::SeriesError;
};

/// Quadratic monomial presentation: x_i x_j = 0 (i = j allowed).
/// Indices are 1-based as in the variable names x_{j,(-k)}.
struct JetPresentation {
  int ell = 0;
  std::vector<std::pair<int, int>> relations;

  void validate() const {
    std::vector<std::pair<int, int>> seen;
    for (auto [i, j] : relations) {
      if (i < 1 || j < 1 || i > ell || j > ell)
        throw SpecViolation("relation index out of range");
      auto key = std::minmax(i, j);
      std::pair<int, int> k{key.first, key.second};
      if (std::find(seen.begin(), seen.end(), k) != seen.end())
        throw SpecViolation("duplicate relation");
      seen.push_back(k);
    }
  }
};

/// Edge relations x_i x_j = 0 of a simple graph.
inline JetPresentation presentation_of(const Graph& g) {
  JetPresentation p;
  p.ell = g.r;
  for (auto [i, j] : g.edge_pairs()) p.relations.emplace_back(i + 1, j + 1);
  p.validate();
  return p;
}

enum class RankMode { SinglePrime, DualPrime, ExactRational };

struct GradedDimensionTable {
  std::vector<std::int64_t> dims;  // index = degree
  std::vector<std::uint64_t> primes;
  RankMode mode = RankMode::SinglePrime;
};

namespace detail_jet {

/// A monomial in the variables x_{j,(-k)}, deg x_{j,(-k)} = k, stored as
/// a sorted multiset of (k, j) factor pairs.
using Monomial = std::vector<std::pair<int, int>>;

inline void canon(Monomial& m) { std::sort(m.begin(), m.end()); }

/// All monomials of weighted degree d in ell variables.
inline std::vector<Monomial> monomials_of_degree(int ell, int d) {
  std::vector<Monomial> out;
  Monomial cur;
  // factors chosen in nonincreasing (k, j) order to avoid duplicates
  std::function<void(int, std::pair<int, int>)> rec = [&](int rem, std::pair<int, int> max_factor) {
    if (rem == 0) {
      Monomial m = cur;
      canon(m);
      out.push_back(std::move(m));
      return;
    }
    for (int k = std::min(rem, max_factor.first); k >= 1; --k) {
      int jmax = (k == max_factor.first) ? max_factor.second : ell;
      for (int j = jmax; j >= 1; --j) {
        cur.emplace_back(k, j);
        rec(rem - k, {k, j});
        cur.pop_back();
      }
    }
  };
  rec(d, {d, ell});
  return out;
}

/// One generator as a sparse integer row over degree-d monomials.
struct Row {
  std::vector<std::pair<std::size_t, Int>> entries;  // (column, coefficient)
};

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Int binom(int n, int k) {
  Int b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace detail_jet

/// All multiples (monomial of degree d-2-s) * T^s(x_i x_j), expanded by
/// the Leibniz rule:
///   T^s(x_{i,(-1)} x_{j,(-1)}) =
///     sum_{a+b=s} binom(s,a) (-1)^a a! (-1)^b b! x_{i,(-1-a)} x_{j,(-1-b)}.
/// `unit_coefficients` replaces every nonzero Leibniz coefficient by 1;
/// ranks must be unaffected (tested property), it is not the real algebra.
inline std::vector<detail_jet::Row> jet_generators(
    const JetPresentation& pres, int d,
    const std::map<detail_jet::Monomial, std::size_t>& column_of, bool unit_coefficients = false) {
  using namespace detail_jet;
  std::vector<Row> rows;
  if (d < 2) return rows;
  for (auto [i, j] : pres.relations) {
    for (int s = 0; s + 2 <= d; ++s) {
      // T^s(x_i x_j) as a map degree-(s+2) quadratic -> coefficient
      std::vector<std::pair<Monomial, Int>> quad;
      for (int a = 0; a <= s; ++a) {
        int b = s - a;
        Int coeff = binom(s, a) * factorial(a) * factorial(b);
        if ((a + b) % 2 == 1) coeff = -coeff;
        if (unit_coefficients) coeff = (coeff == 0) ? Int(0) : Int(1);
        Monomial q{{1 + a, i}, {1 + b, j}};
        canon(q);
        bool merged = false;
        for (auto& [m, c] : quad)
          if (m == q) {
            c += coeff;
            merged = true;
            break;
          }
        if (!merged) quad.emplace_back(std::move(q), coeff);
      }
      for (const Monomial& mu : monomials_of_degree(pres.ell, d - 2 - s)) {
        Row row;
        std::map<std::size_t, Int> acc;
        for (const auto& [q, c] : quad) {
          if (c == 0) continue;
          Monomial full = mu;
          full.insert(full.end(), q.begin(), q.end());
          canon(full);
          acc[column_of.at(full)] += c;
        }
        for (auto& [col, c] : acc)
          if (c != 0) row.entries.emplace_back(col, c);
        if (!row.entries.empty()) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace detail_jet {

/// Rank over F_p by sparse elimination with pivot bookkeeping.
inline std::int64_t rank_mod_p(const std::vector<Row>& rows, std::uint64_t p) {
  using namespace modular;
  std::map<std::size_t, std::vector<std::pair<std::size_t, u64>>> pivot_rows;
  for (const Row& r : rows) {
    std::vector<std::pair<std::size_t, u64>> cur;
    cur.reserve(r.entries.size());
    for (const auto& [col, c] : r.entries) {
      Int m = c % Int(p);
      if (m < 0) m += p;
      u64 v = static_cast<u64>(m);
      if (v != 0) cur.emplace_back(col, v);
    }
    while (!cur.empty()) {
      std::size_t lead = cur.front().first;
      auto it = pivot_rows.find(lead);
      if (it == pivot_rows.end()) {
        // normalize so the pivot entry is 1
        u64 inv = invmod(cur.front().second, p);
        for (auto& [col, v] : cur) v = mulmod(v, inv, p);
        pivot_rows.emplace(lead, std::move(cur));
        break;
      }
      // cur -= cur[0] * pivot_row
      u64 f = cur.front().second;
      const auto& pr = it->second;
      std::vector<std::pair<std::size_t, u64>> next;
      next.reserve(cur.size() + pr.size());
      std::size_t a = 0, b = 0;
      while (a < cur.size() || b < pr.size()) {
        if (b == pr.size() || (a < cur.size() && cur[a].first < pr[b].first)) {
          next.push_back(cur[a++]);
        } else if (a == cur.size() || pr[b].first < cur[a].first) {
          next.emplace_back(pr[b].first, submod(0, mulmod(f, pr[b].second, p), p));
          ++b;
        } else {
          u64 v = submod(cur[a].second, mulmod(f, pr[b].second, p), p);
          if (v != 0) next.emplace_back(cur[a].first, v);
          ++a;
          ++b;
        }
      }
      cur = std::move(next);
    }
  }
  return static_cast<std::int64_t>(pivot_rows.size());
}

inline std::int64_t rank_exact(const std::vector<Row>& rows) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rat>>> pivot_rows;
  for (const Row& r : rows) {
    std::vector<std::pair<std::size_t, Rat>> cur;
    for (const auto& [col, c] : r.entries) cur.emplace_back(col, Rat(c));
    while (!cur.empty()) {
      std::size_t lead = cur.front().first;
      auto it = pivot_rows.find(lead);
      if (it == pivot_rows.end()) {
        Rat inv = Rat(1) / cur.front().second;
        for (auto& [col, v] : cur) v *= inv;
        pivot_rows.emplace(lead, std::move(cur));
        break;
      }
      Rat f = cur.front().second;
      const auto& pr = it->second;
      std::vector<std::pair<std::size_t, Rat>> next;
      std::size_t a = 0, b = 0;
      while (a < cur.size() || b < pr.size()) {
        if (b == pr.size() || (a < cur.size() && cur[a].first < pr[b].first)) {
          next.push_back(cur[a++]);
        } else if (a == cur.size() || pr[b].first < cur[a].first) {
          next.emplace_back(pr[b].first, Rat(-f * pr[b].second));
          ++b;
        } else {
          Rat v = cur[a].second - f * pr[b].second;
          if (v != 0) next.emplace_back(cur[a].first, v);
          ++a;
          ++b;
        }
      }
      cur = std::move(next);
    }
  }
  return static_cast<std::int64_t>(pivot_rows.size());
}

}  // namespace detail_jet

/// Graded dimensions dim J_inf(R)_(d) for d = 0..max_degree:
/// #degree-d monomials minus the rank of the degree-d generator matrix.
inline GradedDimensionTable hilbert_series(const JetPresentation& pres, int max_degree,
                                           RankMode mode = RankMode::DualPrime,
                                           std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                                           bool unit_coefficients = false) {
  pres.validate();
  if (max_degree > 14) throw BudgetExceeded("max_degree capped at 14");
  GradedDimensionTable t;
  t.mode = mode;
  std::mt19937_64 rng(seed);
  if (mode != RankMode::ExactRational) {
    t.primes.push_back(modular::random_prime(rng));
    if (mode == RankMode::DualPrime) t.primes.push_back(modular::random_prime(rng));
  }
  for (int d = 0; d <= max_degree; ++d) {
    auto mons = detail_jet::monomials_of_degree(pres.ell, d);
    std::map<detail_jet::Monomial, std::size_t> column_of;
    for (std::size_t c = 0; c < mons.size(); ++c) column_of.emplace(mons[c], c);
    auto rows = jet_generators(pres, d, column_of, unit_coefficients);
    std::int64_t rank;
    if (mode == RankMode::ExactRational) {
      if (d > 8) throw BudgetExceeded("exact-rational mode capped at degree 8");
      rank = detail_jet::rank_exact(rows);
    } else {
      rank = detail_jet::rank_mod_p(rows, t.primes[0]);
      if (mode == RankMode::DualPrime) {
        std::int64_t r2 = detail_jet::rank_mod_p(rows, t.primes[1]);
        if (r2 != rank)
          throw SeriesError("dual-prime rank disagreement at degree " + std::to_string(d));
      }
    }
    t.dims.push_back(static_cast<std::int64_t>(mons.size()) - rank);
  }
  return t;
}

struct JetComparison {
  bool match = true;
  int mismatch_degree = -1;
  Rat jet_value, series_value;
};

/// Coefficient-by-coefficient check of the oracle against any series.
inline JetComparison compare_with_series(const GradedDimensionTable& t, const Series& s) {
  JetComparison c;
  for (std::size_t d = 0; d < t.dims.size(); ++d) {
    Rat sv = s.coeff(Rat(static_cast<std::int64_t>(d)));
    if (sv != t.dims[d]) {
      c.match = false;
      c.mismatch_degree = static_cast<int>(d);
      c.jet_value = Rat(t.dims[d]);
      c.series_value = sv;
      return c;
    }
  }
  return c;
}

}  // namespace qgraph
