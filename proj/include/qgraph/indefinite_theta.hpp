#pragma once

#include "qgraph/series.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace qgraph {

struct NonMonotoneCone : SeriesError {
  using SeriesError::SeriesError;
};
struct DivergentRange : SeriesError {
  using SeriesError::SeriesError;
};

/// Integer-coefficient polynomial in (n, m) times (-1)^(alpha n + beta m).
struct Weight2D {
  struct Term {
    Rat coeff;
    int dn = 0;
    int dm = 0;
  };
  std::vector<Term> terms;
  int alpha = 0;  // in {0,1}
  int beta = 0;

  Rat eval(std::int64_t n, std::int64_t m) const {
    Rat acc(0);
    for (const Term& t : terms) {
      Rat v = t.coeff;
      for (int i = 0; i < t.dn; ++i) v *= n;
      for (int i = 0; i < t.dm; ++i) v *= m;
      acc += v;
    }
    std::int64_t sgn_exp = alpha * n + beta * m;
    if (((sgn_exp % 2) + 2) % 2 == 1) acc = -acc;
    return acc;
  }
};

enum class Cone { PosPos, NegNeg };

/// Exponent a n^2 + h n m + c m^2 + d n + e m + const_exp summed with
/// the given weight over the declared cones (NN means n, m <= -1).
struct ConeThetaSpec {
  Rat a, h, c;  // quadratic part
  Rat d, e;     // linear part
  Rat const_exp = Rat(0);
  Weight2D weight;
  std::vector<std::pair<Cone, int>> cones;  // cone, sign (+1 / -1)
};

namespace detail_theta {

inline std::int64_t rat_denom_i64(const Rat& x) {
  return static_cast<std::int64_t>(boost::multiprecision::denominator(x));
}

/// Accumulates (exponent, value) pairs on a fixed rational lattice.
struct Accum {
  std::int64_t L;
  std::map<std::int64_t, Rat> c;

  void add(const Rat& exp, const Rat& v) {
    Rat s = exp * L;
    if (boost::multiprecision::denominator(s) != 1)
      throw OffLatticeExponent("theta exponent off the declared lattice");
    c[static_cast<std::int64_t>(boost::multiprecision::numerator(s))] += v;
  }

  Series to_series(const Rat& N) const {
    Rat ns = N * L;
    Int num = boost::multiprecision::numerator(ns);
    Int den = boost::multiprecision::denominator(ns);
    Int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    std::int64_t NS = static_cast<std::int64_t>(q);
    std::int64_t lo = c.empty() ? 0 : std::min<std::int64_t>(0, c.begin()->first);
    std::vector<Rat> v(static_cast<std::size_t>(NS - lo + 1), Rat(0));
    for (const auto& [e, x] : c)
      if (e <= NS) v[static_cast<std::size_t>(e - lo)] += x;
    return Series::from_coeffs(std::move(v), lo, NS, L);
  }
};

/// Sum of w(n_orig(n), m_orig(m)) q^{f(n,m)} over the folded quadrant
/// n, m >= 0 with f = a n^2 + h n m + c m^2 + d n + e m + c0. Requires
/// a > 0, c > 0, h >= 0 so that f eventually grows in each coordinate;
/// that is the explicit proof obligation making the truncation sound.
inline void quadrant_sum(Accum& acc, const Rat& a, const Rat& h, const Rat& c, const Rat& d,
                         const Rat& e, const Rat& c0, const Weight2D& w, bool folded, int sign,
                         const Rat& N) {
  if (a <= 0 || c <= 0 || h < 0)
    throw NonMonotoneCone("cone exponent is not coordinate-wise eventually increasing");
  // min over m >= 0 of c m^2 + e m (scan past the vertex)
  Rat m_min(0);
  for (std::int64_t m = 1;; ++m) {
    Rat v = c * m * m + e * m;
    if (v >= m_min && 2 * c * m + e > 0) break;
    if (v < m_min) m_min = v;
  }
  for (std::int64_t n = 0;; ++n) {
    Rat qn = a * n * n + d * n;
    if (qn + m_min + c0 > N && 2 * a * n + d > 0) break;
    for (std::int64_t m = 0;; ++m) {
      Rat f = qn + c * m * m + (h * n + e) * m + c0;
      if (f > N) {
        if (2 * c * m + h * n + e > 0) break;
        continue;
      }
      std::int64_t no = folded ? -n - 1 : n;
      std::int64_t mo = folded ? -m - 1 : m;
      Rat v = w.eval(no, mo);
      if (v != 0) acc.add(f, sign * v);
    }
  }
}

}  // namespace detail_theta

/// Exact truncation of the cone-restricted theta sum. Negative cones
/// are folded to the first quadrant by n -> -n-1, m -> -m-1; weights
/// are evaluated at the original coordinates.
inline Series cone_sum(const ConeThetaSpec& spec, const Rat& N) {
  std::int64_t L = 1;
  for (const Rat* x : {&spec.a, &spec.h, &spec.c, &spec.d, &spec.e, &spec.const_exp})
    L = std::lcm(L, detail_theta::rat_denom_i64(*x));
  detail_theta::Accum acc{L, {}};
  for (auto [cone, sign] : spec.cones) {
    if (cone == Cone::PosPos) {
      detail_theta::quadrant_sum(acc, spec.a, spec.h, spec.c, spec.d, spec.e, spec.const_exp,
                                 spec.weight, false, sign, N);
    } else {
      // f(-n-1, -m-1) expanded over n, m >= 0
      Rat d2 = 2 * spec.a + spec.h - spec.d;
      Rat e2 = 2 * spec.c + spec.h - spec.e;
      Rat c2 = spec.a + spec.h + spec.c - spec.d - spec.e + spec.const_exp;
      detail_theta::quadrant_sum(acc, spec.a, spec.h, spec.c, d2, e2, c2, spec.weight, true, sign,
                                 N);
    }
  }
  return acc.to_series(N);
}

/// Direct summation over the box |n|, |m| <= B, keeping only points in
/// the declared cones. Independent cross-check for the folded path.
inline Series cone_sum_box(const ConeThetaSpec& spec, const Rat& N, std::int64_t B) {
  std::int64_t L = 1;
  for (const Rat* x : {&spec.a, &spec.h, &spec.c, &spec.d, &spec.e, &spec.const_exp})
    L = std::lcm(L, detail_theta::rat_denom_i64(*x));
  detail_theta::Accum acc{L, {}};
  for (auto [cone, sign] : spec.cones) {
    for (std::int64_t n = -B; n <= B; ++n) {
      for (std::int64_t m = -B; m <= B; ++m) {
        bool in = (cone == Cone::PosPos) ? (n >= 0 && m >= 0) : (n < 0 && m < 0);
        if (!in) continue;
        Rat f = spec.a * n * n + spec.h * n * m + spec.c * m * m + spec.d * n + spec.e * m +
                spec.const_exp;
        if (f > N) continue;
        Rat v = spec.weight.eval(n, m);
        if (v != 0) acc.add(f, sign * v);
      }
    }
  }
  return acc.to_series(N);
}

/// Weight poly(n) * (-1)^(gamma n), exponent a n^2 + b n + c, over
/// n >= n0 or over all of Z.
struct WeightedTheta1D {
  Rat a, b, c;
  std::vector<std::pair<Rat, int>> poly;  // (coeff, power of n)
  int gamma = 0;
  bool two_sided = false;
  std::int64_t n0 = 0;

  Rat weight(std::int64_t n) const {
    Rat acc(0);
    for (const auto& [co, p] : poly) {
      Rat v = co;
      for (int i = 0; i < p; ++i) v *= n;
      acc += v;
    }
    if (((gamma * n % 2) + 2) % 2 == 1) acc = -acc;
    return acc;
  }
};

inline Series theta_1d(const WeightedTheta1D& spec, const Rat& N) {
  if (spec.a <= 0) throw DivergentRange("theta_1d requires positive quadratic coefficient");
  std::int64_t L = 1;
  for (const Rat* x : {&spec.a, &spec.b, &spec.c}) L = std::lcm(L, detail_theta::rat_denom_i64(*x));
  detail_theta::Accum acc{L, {}};
  auto scan = [&](std::int64_t start, std::int64_t step) {
    for (std::int64_t n = start;; n += step) {
      Rat f = spec.a * n * n + spec.b * n + spec.c;
      if (f > N) {
        // past the vertex in the scan direction the exponent only grows
        if (step * (2 * spec.a * n + spec.b) > 0) break;
        continue;
      }
      Rat v = spec.weight(n);
      if (v != 0) acc.add(f, v);
    }
  };
  if (spec.two_sided) {
    scan(0, 1);
    scan(-1, -1);
  } else {
    scan(spec.n0, 1);
  }
  return acc.to_series(N);
}

}  // namespace qgraph
