#pragma once

#include "qgraph/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace qgraph {

struct PrecisionLoss : SeriesError {
  using SeriesError::SeriesError;
};

/// t -> 0+ verification of the prefactored path-graph quantities
/// (q)inf^e * H_{A_k}(e^{-t}) against their leading terms. Everything
/// here is long double; the exact-series modules never enter except
/// through the cross-validation helper.
namespace asym {

inline constexpr long double kEulerGamma = 0.57721566490153286060651209008240243L;
inline constexpr long double kRelCutoff = 1e-17L;
inline constexpr std::size_t kMaxTerms = 4'000'000;

/// Compensated sum of the collected terms, smallest magnitude first.
inline long double stable_sum(std::vector<long double>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });
  long double s = 0.0L, c = 0.0L;
  for (long double x : terms) {
    long double y = x - c;
    long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

/// (q)inf = prod_{n>=1} (1-q^n), cut when q^n drops below the relative
/// cutoff.
inline long double pinf(long double q) {
  long double p = 1.0L, qn = q;
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    p *= (1.0L - qn);
    qn *= q;
    if (qn < kRelCutoff) return p;
  }
  throw PrecisionLoss("(q)inf cutoff not reached");
}

/// D(q) = sum_{n>=1} q^n/(1-q^n).
inline long double divisor_sum(long double q) {
  std::vector<long double> terms;
  long double qn = q;
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    long double term = qn / (1.0L - qn);
    terms.push_back(term);
    qn *= q;
    if (term < kRelCutoff) return stable_sum(terms);
  }
  throw PrecisionLoss("divisor sum cutoff not reached");
}

/// H(q) = sum_{n>=1} n (12|n) q^{(n^2-1)/24}; support on n coprime to 6.
inline long double false_theta_32(long double q) {
  std::vector<long double> terms;
  long double lq = std::log(q);
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    int chi = kron12(static_cast<std::int64_t>(n));
    if (chi == 0) continue;
    long double e = (static_cast<long double>(n) * n - 1.0L) / 24.0L;
    long double term = chi * static_cast<long double>(n) * std::exp(e * lq);
    terms.push_back(term);
    if (std::fabs(term) < kRelCutoff && n > 12) return stable_sum(terms);
  }
  throw PrecisionLoss("false theta cutoff not reached");
}

/// G(q) = sum_{n>=0} ((q)_n - (q)inf), via -H(q)/2 + (q)inf (1/2 - D(q)).
inline long double tails_sum(long double q) {
  return -false_theta_32(q) / 2.0L + pinf(q) * (0.5L - divisor_sum(q));
}

}  // namespace asym

enum class AsymVerdict { Pass, Fail, InsufficientGrid };

/// One item of the t -> 0+ claims: the quantity (q)inf^e H_{A_k},
/// the exponent m of the (gamma - log t)/t leading term (0 means the
/// limit is a constant), and whether the limit is 1/t (item 1 only,
/// via limit_inverse_t).
struct AsymptoticCase {
  std::string id;      // "A2".."A8"
  int item = 0;        // 1..7
  int prefactor = 1;   // e in (q)inf^e
  int log_weight = 0;  // m in m (gamma - log t)/t, 0 for constant limit
  bool limit_inverse_t = false;
};

inline const std::vector<AsymptoticCase>& asymptotic_cases() {
  static const std::vector<AsymptoticCase> cases = {
      {"A2", 1, 1, 0, true},  {"A3", 2, 2, 0, false}, {"A4", 3, 2, 1, false},
      {"A5", 4, 3, 0, false}, {"A6", 5, 3, 2, false}, {"A7", 6, 4, 0, false},
      {"A8", 7, 4, 3, false},
  };
  return cases;
}

inline const AsymptoticCase& find_case(const std::string& id) {
  for (const auto& c : asymptotic_cases())
    if (c.id == id) return c;
  throw SeriesError("unknown asymptotic case: " + id);
}

/// (q)inf^e H_{A_k}(e^{-t}) through the closed forms, never the
/// truncated graph sums.
inline long double eval_case(const AsymptoticCase& c, long double t) {
  if (!(t >= 0.01L && t <= 0.5L)) throw SeriesError("t outside [0.01, 0.5]");
  long double q = std::exp(-t);
  switch (c.item) {
    case 1:
      return 1.0L / (1.0L - q);
    case 2:
      return (1.0L - asym::pinf(q)) / q;
    case 3:
      return asym::divisor_sum(q) / q;
    case 4:
      return asym::tails_sum(q) / q;
    case 5:
      return (2.0L * asym::divisor_sum(q) - 1.0L + asym::pinf(q)) / q;
    case 6: {
      long double p = asym::pinf(q);
      long double num = -1.0L + p * asym::divisor_sum(q) + asym::tails_sum(q) + p;
      return num / (q * (1.0L - q));
    }
    case 7: {
      long double p = asym::pinf(q);
      long double num = -1.0L + p + 3.0L * asym::divisor_sum(q) - 2.0L * asym::tails_sum(q);
      return num / (q * q);
    }
    default:
      throw SeriesError("unknown asymptotic item");
  }
}

/// Normalized residual: quantity minus claimed leading term, scaled so
/// the claim predicts r(t) -> 0 (linearly, possibly with a log factor).
inline long double residual(const AsymptoticCase& c, long double t) {
  long double Q = eval_case(c, t);
  if (c.limit_inverse_t) return t * Q - 1.0L;
  if (c.log_weight > 0)
    return t * Q - c.log_weight * (asym::kEulerGamma - std::log(t));
  return Q - 1.0L;
}

struct AsymReport {
  std::string id;
  AsymVerdict verdict = AsymVerdict::InsufficientGrid;
  std::vector<long double> grid;
  std::vector<long double> values;     // eval_case at each grid point
  std::vector<long double> residuals;
  std::vector<long double> ratios;     // |r_{i+1}| / |r_i|
};

/// Decay check over a descending grid: either every halving ratio sits
/// in [0.3, 0.8] (linear decay up to log factors) or the residual is
/// already below 1e-3 throughout.
inline AsymReport check_case(const AsymptoticCase& c, const std::vector<long double>& grid) {
  AsymReport rep;
  rep.id = c.id;
  rep.grid = grid;
  for (long double t : grid) {
    rep.values.push_back(eval_case(c, t));
    rep.residuals.push_back(residual(c, t));
  }
  if (grid.size() < 2) {
    rep.verdict = AsymVerdict::InsufficientGrid;
    return rep;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i + 1] < grid[i])) throw SeriesError("grid must be strictly descending");
    long double a = std::fabs(rep.residuals[i]), b = std::fabs(rep.residuals[i + 1]);
    rep.ratios.push_back(a == 0.0L ? 0.0L : b / a);
  }
  bool small = true;
  for (long double r : rep.residuals)
    if (std::fabs(r) >= 1e-3L) small = false;
  bool decaying = true;
  for (long double r : rep.ratios)
    if (!(r >= 0.3L && r <= 0.8L)) decaying = false;
  rep.verdict = (decaying || small) ? AsymVerdict::Pass : AsymVerdict::Fail;
  return rep;
}

inline AsymReport check_case(const std::string& id, const std::vector<long double>& grid) {
  return check_case(find_case(id), grid);
}

inline std::vector<long double> default_grid() { return {0.2L, 0.1L, 0.05L, 0.025L}; }

/// The same prefactored quantity as an exact truncated series; the
/// numeric and exact paths must agree at moderate t (cross-validation).
inline Series series_quantity(const AsymptoticCase& c, const Rat& N) {
  auto p = [&](const Rat& M) { return pochhammer(Rat(1), std::nullopt, M); };
  auto geo = [&](const Rat& M) {
    return (Series::one(M) - Series::monomial(Rat(1), Rat(1), M)).inverted();
  };
  switch (c.item) {
    case 1:
      return geo(N);
    case 2: {
      Rat M = N + 1;
      return (Series::one(M) - p(M)).shifted(Rat(-1)).truncated(N);
    }
    case 3: {
      Rat M = N + 1;
      return named_series("D", M).shifted(Rat(-1)).truncated(N);
    }
    case 4: {
      Rat M = N + 1;
      return named_series("G", M).shifted(Rat(-1)).truncated(N);
    }
    case 5: {
      Rat M = N + 1;
      Series s = Rat(2) * named_series("D", M) - Series::one(M) + p(M);
      return s.shifted(Rat(-1)).truncated(N);
    }
    case 6: {
      Rat M = N + 1;
      Series num = Series::zero(M) - Series::one(M) +
                   (p(M) * named_series("D", M)).truncated(M) + named_series("G", M) + p(M);
      return (geo(M) * num).truncated(M).shifted(Rat(-1)).truncated(N);
    }
    case 7: {
      Rat M = N + 2;
      Series num = Series::zero(M) - Series::one(M) + p(M) + Rat(3) * named_series("D", M) -
                   Rat(2) * named_series("G", M);
      return num.shifted(Rat(-2)).truncated(N);
    }
    default:
      throw SeriesError("unknown asymptotic item");
  }
}

/// Numeric evaluation of a truncated series at q = e^{-t}.
inline long double evaluate_series_at(const Series& s, long double t) {
  long double q = std::exp(-t);
  std::vector<long double> terms;
  for (const auto& [e, c] : s.terms()) {
    long double ce = static_cast<long double>(boost::multiprecision::numerator(c)
                                                  .convert_to<double>()) /
                     static_cast<long double>(boost::multiprecision::denominator(c)
                                                  .convert_to<double>());
    long double ee = static_cast<long double>(boost::multiprecision::numerator(e)
                                                  .convert_to<double>()) /
                     static_cast<long double>(boost::multiprecision::denominator(e)
                                                  .convert_to<double>());
    terms.push_back(ce * std::exp(ee * std::log(q)));
  }
  return asym::stable_sum(terms);
}

/// Least-squares fit of the residual to a t log t + b t + c t^2 over a
/// grid: exploratory refinement of the leading term, no pass/fail
/// semantics attached.
struct CorrectionFit {
  long double a_tlogt = 0.0L, b_t = 0.0L, c_t2 = 0.0L;
};

inline CorrectionFit fit_correction(const AsymptoticCase& c, const std::vector<long double>& grid) {
  if (grid.size() < 3) throw SeriesError("fit needs at least 3 grid points");
  long double A[3][4] = {};
  for (long double t : grid) {
    long double basis[3] = {t * std::log(t), t, t * t};
    long double r = residual(c, t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) A[i][j] += basis[i] * basis[j];
      A[i][3] += basis[i] * r;
    }
  }
  // Gaussian elimination on the 3x4 normal system
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r2 = col + 1; r2 < 3; ++r2)
      if (std::fabs(A[r2][col]) > std::fabs(A[piv][col])) piv = r2;
    std::swap(A[col], A[piv]);
    for (int r2 = 0; r2 < 3; ++r2) {
      if (r2 == col) continue;
      long double f = A[r2][col] / A[col][col];
      for (int j = col; j < 4; ++j) A[r2][j] -= f * A[col][j];
    }
  }
  return {A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

inline std::string verdict_name(AsymVerdict v) {
  switch (v) {
    case AsymVerdict::Pass:
      return "pass";
    case AsymVerdict::Fail:
      return "fail";
    default:
      return "insufficient-grid";
  }
}

}  // namespace qgraph
