#pragma once

#include "qgraph/series.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgraph {

struct DivergentProduct : SeriesError {
  using SeriesError::SeriesError;
};
struct UnknownVariant : SeriesError {
  using SeriesError::SeriesError;
};
struct UnknownName : SeriesError {
  using SeriesError::SeriesError;
};

/// 1 - q^n, exact to order N.
inline Series one_minus_qn(const Rat& n, const Rat& N) {
  return Series::one(N) - Series::monomial(Rat(1), n, N);
}

/// 1 + q^n, exact to order N.
inline Series one_plus_qn(const Rat& n, const Rat& N) {
  return Series::one(N) + Series::monomial(Rat(1), n, N);
}

/// q-Pochhammer (q^r; q)_length. length = nullopt means the infinite
/// product, which requires r > 0 so that factors beyond exponent N are
/// 1 + O(q^{N+1}) and can be skipped.
inline Series pochhammer(const Rat& r, std::optional<std::int64_t> length, const Rat& N) {
  if (!length.has_value() && r <= 0)
    throw DivergentProduct("(q^r;q)_inf requires r > 0, got r = " + r.str());
  Series acc = Series::one(N);
  if (length.has_value()) {
    for (std::int64_t j = 0; j < *length; ++j) {
      Rat e = r + j;
      if (e > N) break;  // remaining factors are 1 + O(q^{N+1})
      acc = (acc * one_minus_qn(e, N)).truncated(N);
    }
  } else {
    for (Rat e = r; e <= N; e += 1) acc = (acc * one_minus_qn(e, N)).truncated(N);
  }
  return acc;
}

/// (q;q)_n for n = 0..nmax plus (q;q)_inf, all to order N, built once.
struct PochhammerTable {
  std::vector<Series> poch;      // (q)_n
  std::vector<Series> inv_poch;  // 1/(q)_n
  Series poch_inf;
  Series inv_poch_inf;
};

inline PochhammerTable make_pochhammer_table(std::int64_t nmax, const Rat& N) {
  PochhammerTable t;
  t.poch.reserve(static_cast<std::size_t>(nmax + 1));
  t.inv_poch.reserve(static_cast<std::size_t>(nmax + 1));
  Series acc = Series::one(N);
  t.poch.push_back(acc);
  t.inv_poch.push_back(acc);
  for (std::int64_t n = 1; n <= nmax; ++n) {
    if (Rat(n) <= N) acc = (acc * one_minus_qn(Rat(n), N)).truncated(N);
    t.poch.push_back(acc);
    t.inv_poch.push_back(acc.inverted());
  }
  t.poch_inf = pochhammer(Rat(1), std::nullopt, N);
  t.inv_poch_inf = t.poch_inf.inverted();
  return t;
}

enum class LambertVariant {
  Plain,            // sum_{n>=1} n^k q^n / (1-q^n)^p
  DoubledExponent,  // sum_{n>=1} n^k q^{2n} / (1-q^n)^p
};

/// Lambert-type divisor sums, exact to order N. Only n <= N contribute.
inline Series lambert_sum(int weight, int pole_order, const Rat& N,
                          LambertVariant variant = LambertVariant::Plain) {
  if (pole_order != 1 && pole_order != 2)
    throw UnknownVariant("lambert_sum: pole order must be 1 or 2");
  std::int64_t ns = static_cast<std::int64_t>(N);  // N integral for these sums
  std::vector<Rat> c(static_cast<std::size_t>(ns + 1), Rat(0));
  std::int64_t a = (variant == LambertVariant::DoubledExponent) ? 2 : 1;
  for (std::int64_t n = 1; n <= ns; ++n) {
    Int nk = 1;
    for (int i = 0; i < weight; ++i) nk *= n;
    for (std::int64_t m = a; n * m <= ns; ++m) {
      Int w = nk;
      if (pole_order == 2) w *= (m - a + 1);
      c[static_cast<std::size_t>(n * m)] += Rat(w);
    }
  }
  return Series::from_coeffs(std::move(c), 0, ns);
}

// Character tables. chi_plus / chi_minus are supported on n^2 = 1, 49
// (mod 120) with sign (-1)^floor(n/30); kron12 is the pattern of the
// Kronecker symbol (12|n).
inline int kron12(std::int64_t n) {
  switch (((n % 12) + 12) % 12) {
    case 1:
    case 11:
      return 1;
    case 5:
    case 7:
      return -1;
    default:
      return 0;
  }
}

inline int chi_plus(std::int64_t n) {
  if ((n * n) % 120 != 1) return 0;
  return (n / 30) % 2 == 0 ? 1 : -1;
}

inline int chi_minus(std::int64_t n) {
  if ((n * n) % 120 != 49) return 0;
  return (n / 30) % 2 == 0 ? 1 : -1;
}

namespace detail {

/// q^{an}/(1-q^n)^p as a dense row, added into c (integer lattice).
inline void add_geometric_row(std::vector<Rat>& c, std::int64_t n, std::int64_t a, int p,
                              const Rat& w, std::int64_t ns) {
  for (std::int64_t m = 0; n * (a + m) <= ns; ++m) {
    Rat v = w;
    if (p == 2) v *= (m + 1);
    c[static_cast<std::size_t>(n * (a + m))] += v;
  }
}

inline Series build_D(const Rat& N) { return lambert_sum(0, 1, N); }

inline Series build_E2(const Rat& N) {
  return Series::one(N) - Rat(24) * lambert_sum(1, 1, N);
}

inline Series build_G(const Rat& N) {
  // (q)_n - (q)_inf has lowest exponent n+1, so indices n > N contribute 0
  PochhammerTable t = make_pochhammer_table(static_cast<std::int64_t>(N), N);
  Series acc = Series::zero(N);
  for (std::size_t n = 0; n < t.poch.size(); ++n) acc = acc + (t.poch[n] - t.poch_inf);
  return acc;
}

inline Series build_U1(const Rat& N) {
  std::int64_t ns = static_cast<std::int64_t>(N);
  PochhammerTable t = make_pochhammer_table(ns, N);
  Series acc = Series::zero(N);
  for (std::int64_t n = 0; n + 1 <= ns; ++n) {
    Series term = t.poch[static_cast<std::size_t>(n)].pow(2).shifted(Rat(n + 1)).truncated(N);
    acc = acc + term;
  }
  return acc;
}

inline Series build_sigmaKZ(const Rat& N) {
  std::int64_t ns = static_cast<std::int64_t>(N);
  PochhammerTable t = make_pochhammer_table(ns, N);
  Series acc = Series::one(N);
  for (std::int64_t n = 0; n + 1 <= ns; ++n) {
    Series term = t.poch[static_cast<std::size_t>(n)].shifted(Rat(n + 1)).truncated(N);
    acc = (n % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline Series build_H32(const Rat& N) {
  std::vector<Rat> c;
  std::int64_t ns = static_cast<std::int64_t>(N);
  c.assign(static_cast<std::size_t>(ns + 1), Rat(0));
  for (std::int64_t n = 1; (n * n - 1) / 24 <= ns; ++n) {
    int chi = kron12(n);
    if (chi != 0) c[static_cast<std::size_t>((n * n - 1) / 24)] += Rat(n * chi);
  }
  return Series::from_coeffs(std::move(c), 0, ns);
}

inline Series build_chi(const Rat& N, bool one) {
  // chi1: sum q^n/(q^{n+1})_{n+1};  chi0: sum q^n/(q^{n+1})_n
  std::int64_t ns = static_cast<std::int64_t>(N);
  Series acc = Series::zero(N);
  for (std::int64_t n = 0; n <= ns; ++n) {
    Series den = pochhammer(Rat(n + 1), one ? n + 1 : n, N);
    acc = acc + (den.inverted().shifted(Rat(n))).truncated(N);
  }
  return acc;
}

inline Series build_theta_tilde(const Rat& N, bool plus) {
  std::int64_t ns = static_cast<std::int64_t>(N);
  std::int64_t off = plus ? 1 : 49;
  std::vector<Rat> c(static_cast<std::size_t>(ns + 1), Rat(0));
  for (std::int64_t n = 1;; ++n) {
    std::int64_t e2 = n * n - off;
    if (e2 > 120 * ns && n > 7) break;
    if (e2 < 0 || e2 % 120 != 0) continue;
    int chi = plus ? chi_plus(n) : chi_minus(n);
    if (chi != 0) c[static_cast<std::size_t>(e2 / 120)] += Rat(chi);
  }
  return Series::from_coeffs(std::move(c), 0, ns);
}

// I1, I2 and the holomorphic Appell-type sum are two-sided sums over
// Z \ {0}; the builders implement their folds onto n >= 1. The folds
// themselves are verified as registry identities against direct
// two-sided summation.
inline Series build_I1(const Rat& N) {
  // folded form: sum_{n>=1} (-1)^{n+1} [q^{n(3n+1)/2} + q^{3n(n+1)/2}] / (1-q^n)^2
  std::int64_t ns = static_cast<std::int64_t>(N);
  Series acc = Series::zero(N);
  for (std::int64_t n = 1; n * (3 * n - 1) / 2 <= ns; ++n) {
    Rat sign((n % 2 == 1) ? 1 : -1);
    Series den2 = one_minus_qn(Rat(n), N).inverted().pow(2).truncated(N);
    Series num = Series::zero(N);
    Rat e1(n * (3 * n + 1) / 2), e2(3 * n * (n + 1) / 2);
    if (e1 <= N) num = num + Series::monomial(Rat(1), e1, N);
    if (e2 <= N) num = num + Series::monomial(Rat(1), e2, N);
    acc = acc + sign * (num * den2).truncated(N);
  }
  return acc;
}

inline Series build_I2(const Rat& N) {
  // folded form: 2 sum_{n>=1} (-1)^{n+1} n q^{n(n+1)/2} / (1-q^n)
  std::int64_t ns = static_cast<std::int64_t>(N);
  Series acc = Series::zero(N);
  for (std::int64_t n = 1; n * (n + 1) / 2 <= ns; ++n) {
    Rat w(2 * n * ((n % 2 == 1) ? 1 : -1));
    Series t = one_minus_qn(Rat(n), N).inverted().shifted(Rat(n * (n + 1) / 2)).truncated(N);
    acc = acc + w * t;
  }
  return acc;
}

inline Series build_Fhol(const Rat& N) {
  // fold of sum_{n in Z\{0}} (-1)^{n+1} q^{3n(n+1)/2} / (1-q^n)^2
  std::int64_t ns = static_cast<std::int64_t>(N);
  Series acc = Series::zero(N);
  for (std::int64_t n = 1; n * (3 * n - 1) / 2 <= ns; ++n) {
    Rat sign((n % 2 == 1) ? 1 : -1);
    Series den2 = one_minus_qn(Rat(n), N).inverted().pow(2).truncated(N);
    Series num = Series::zero(N);
    Rat e1(3 * n * (n + 1) / 2), e2(n * (3 * n + 1) / 2);
    if (e1 <= N) num = num + Series::monomial(Rat(1), e1, N);
    if (e2 <= N) num = num + Series::monomial(Rat(1), e2, N);
    acc = acc + sign * (num * den2).truncated(N);
  }
  return acc;
}

}  // namespace detail

struct CatalogEntry {
  std::string name;
  std::string description;
  std::function<Series(const Rat&)> builder;
};

/// The named-series catalog. Names are stable CLI-visible identifiers.
inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"D", "divisor-count generating function sum q^n/(1-q^n)", detail::build_D},
      {"sigma1", "divisor sum: sum n q^n/(1-q^n)",
       [](const Rat& N) { return lambert_sum(1, 1, N); }},
      {"sigma2", "sum of squared divisors: sum n^2 q^n/(1-q^n)",
       [](const Rat& N) { return lambert_sum(2, 1, N); }},
      {"E2", "weight-two Eisenstein series 1 - 24 sum sigma_1(n) q^n", detail::build_E2},
      {"G", "sum of tails: sum_n ((q)_n - (q)_inf)", detail::build_G},
      {"U1", "unimodal-rank series U(1;q) = sum q^{n+1} (q)_n^2", detail::build_U1},
      {"sigmaKZ", "sigma(q) = 1 + sum (-1)^n q^{n+1} (q)_n", detail::build_sigmaKZ},
      {"H32", "weight-3/2 false theta: sum n (12|n) q^{(n^2-1)/24}", detail::build_H32},
      {"chi0", "fifth-order mock theta chi_0: sum q^n/(q^{n+1})_n",
       [](const Rat& N) { return detail::build_chi(N, false); }},
      {"chi1", "fifth-order mock theta chi_1: sum q^n/(q^{n+1})_{n+1}",
       [](const Rat& N) { return detail::build_chi(N, true); }},
      {"thetaP", "false theta with character chi_+ on n^2 = 1 mod 120",
       [](const Rat& N) { return detail::build_theta_tilde(N, true); }},
      {"thetaM", "false theta with character chi_- on n^2 = 49 mod 120",
       [](const Rat& N) { return detail::build_theta_tilde(N, false); }},
      {"I1", "Appell-type sum over Z\\{0}: (-1)^{n+1} q^{n(3n+1)/2}/(1-q^n)^2, folded",
       detail::build_I1},
      {"I2", "Appell-type sum over Z\\{0}: (-1)^{n+1} n q^{n(n+1)/2}/(1-q^n), folded",
       detail::build_I2},
      {"Fhol", "holomorphic Appell-type sum (-1)^{n+1} q^{3n(n+1)/2}/(1-q^n)^2, folded",
       detail::build_Fhol},
      {"pochinf", "Euler product (q;q)_inf",
       [](const Rat& N) { return pochhammer(Rat(1), std::nullopt, N); }},
      {"partitions", "partition generating function 1/(q;q)_inf",
       [](const Rat& N) { return pochhammer(Rat(1), std::nullopt, N).inverted(); }},
  };
  return entries;
}

inline Series named_series(const std::string& name, const Rat& N) {
  for (const auto& e : catalog())
    if (e.name == name) return e.builder(N);
  throw UnknownName("unknown series name: " + name);
}

}  // namespace qgraph
