#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Inversion of a series whose leading window coefficient is zero.
struct ZeroLeadingCoefficient : SeriesError {
  using SeriesError::SeriesError;
};
/// A coefficient or comparison was requested beyond a valid truncation.
struct OrderExceeded : SeriesError {
  using SeriesError::SeriesError;
};
/// An exponent does not lie on the series' (1/D)-lattice.
struct OffLatticeExponent : SeriesError {
  using SeriesError::SeriesError;
};

/// Exact truncated Laurent series in q.
///
/// Coefficients are arbitrary-precision rationals; exponents live on the
/// lattice (1/denom)*Z and are stored densely on the window
/// [min_exp, order]. `order` is part of the value: all coefficients with
/// exponent <= order are exact, nothing is known beyond it. Binary
/// operations refine lattices by lcm and compute the tightest sound
/// truncation of the result.
///
/// Series are immutable in spirit: all operations return new values, so
/// sharing across threads is safe.
class Series {
 public:
  Series() : denom_(1), min_s_(0), ord_s_(0), c_{Rat(0)} {}

  static Series zero(const Rat& order, std::int64_t denom = 1) {
    Series s;
    s.denom_ = denom;
    s.ord_s_ = scale_floor(order, denom);
    s.min_s_ = s.ord_s_;
    s.c_.assign(1, Rat(0));
    return s;
  }

  static Series constant(const Rat& value, const Rat& order, std::int64_t denom = 1) {
    return monomial(value, Rat(0), order, denom);
  }

  static Series one(const Rat& order, std::int64_t denom = 1) {
    return constant(Rat(1), order, denom);
  }

  /// value * q^exp, exact to `order`.
  static Series monomial(const Rat& value, const Rat& exp, const Rat& order,
                         std::int64_t denom = 1) {
    denom = std::lcm(denom, exponent_denom(exp));
    Series s;
    s.denom_ = denom;
    s.min_s_ = scale_exact(exp, denom);
    s.ord_s_ = scale_floor(order, denom);
    if (s.ord_s_ < s.min_s_) throw OrderExceeded("monomial exponent beyond order");
    s.c_.assign(static_cast<std::size_t>(s.ord_s_ - s.min_s_ + 1), Rat(0));
    s.c_[0] = value;
    s.normalize();
    return s;
  }

  /// Construct from dense lattice coefficients c[0..], c[i] at
  /// q^((min_exp+i)/denom); order likewise scaled by denom.
  static Series from_coeffs(std::vector<Rat> coeffs, std::int64_t min_exp,
                            std::int64_t order, std::int64_t denom = 1) {
    Series s;
    s.denom_ = denom;
    s.min_s_ = min_exp;
    s.ord_s_ = order;
    s.c_ = std::move(coeffs);
    s.c_.resize(static_cast<std::size_t>(order - min_exp + 1), Rat(0));
    s.normalize();
    return s;
  }

  std::int64_t denom() const { return denom_; }
  Rat min_exp() const { return unscale(min_s_); }
  Rat order() const { return unscale(ord_s_); }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }

  /// Exact coefficient at exponent e; zero below the window or off-lattice.
  Rat coeff(const Rat& e) const {
    if (e > order()) throw OrderExceeded("coefficient requested beyond truncation order");
    Rat scaled = e * denom_;
    if (boost::multiprecision::denominator(scaled) != 1) return Rat(0);
    Int num = boost::multiprecision::numerator(scaled);
    if (num < min_s_) return Rat(0);
    std::int64_t idx = static_cast<std::int64_t>(num) - min_s_;
    return c_[static_cast<std::size_t>(idx)];
  }

  Rat leading_coeff() const { return c_.front(); }

  /// All nonzero (exponent, coefficient) pairs in increasing exponent order.
  std::vector<std::pair<Rat, Rat>> terms() const {
    std::vector<std::pair<Rat, Rat>> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) out.emplace_back(unscale(min_s_ + static_cast<std::int64_t>(i)), c_[i]);
    return out;
  }

  /// Restriction to a lower truncation order (never raises the order).
  Series truncated(const Rat& new_order) const {
    std::int64_t no = scale_floor(new_order, denom_);
    if (no > ord_s_) throw OrderExceeded("cannot extend truncation order");
    Series s(*this);
    s.ord_s_ = no;
    if (no < s.min_s_) {
      s.min_s_ = no;
      s.c_.assign(1, Rat(0));
    } else {
      s.c_.resize(static_cast<std::size_t>(no - s.min_s_ + 1));
    }
    s.normalize();
    return s;
  }

  Series operator-() const {
    Series s(*this);
    for (auto& x : s.c_) x = -x;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }

  friend Series operator*(const Series& a, const Series& b) {
    std::int64_t d = std::lcm(a.denom_, b.denom_);
    Series A = a.refined(d), B = b.refined(d);
    // tightest sound order: each factor's unknown tail is shifted by the
    // other's min exponent
    std::int64_t ord = std::min(A.ord_s_ + B.min_s_, B.ord_s_ + A.min_s_);
    Series r;
    r.denom_ = d;
    r.min_s_ = A.min_s_ + B.min_s_;
    r.ord_s_ = ord;
    if (r.ord_s_ < r.min_s_) {
      // window collapsed; still a valid (empty) truncation at ord
      r.min_s_ = r.ord_s_;
      r.c_.assign(1, Rat(0));
      return r;
    }
    r.c_.assign(static_cast<std::size_t>(r.ord_s_ - r.min_s_ + 1), Rat(0));
    std::int64_t span = r.ord_s_ - r.min_s_;
    for (std::size_t i = 0; i < A.c_.size(); ++i) {
      if (A.c_[i] == 0) continue;
      std::int64_t base = static_cast<std::int64_t>(i);
      if (base > span) break;
      std::size_t jmax = std::min(B.c_.size(), static_cast<std::size_t>(span - base + 1));
      for (std::size_t j = 0; j < jmax; ++j) {
        if (B.c_[j] == 0) continue;
        r.c_[static_cast<std::size_t>(base) + j] += A.c_[i] * B.c_[j];
      }
    }
    r.normalize();
    return r;
  }

  friend Series operator*(const Rat& k, const Series& a) {
    Series s(a);
    for (auto& x : s.c_) x *= k;
    s.normalize();
    return s;
  }

  /// Multiplication by the exact monomial q^e.
  Series shifted(const Rat& e) const {
    std::int64_t d = std::lcm(denom_, exponent_denom(e));
    Series s = refined(d);
    std::int64_t es = scale_exact(e, d);
    s.min_s_ += es;
    s.ord_s_ += es;
    return s;
  }

  /// Two-sided multiplicative inverse, valid to order() - 2*min_exp().
  Series inverted() const {
    if (c_.front() == 0)
      throw ZeroLeadingCoefficient("cannot invert series with zero leading coefficient");
    std::int64_t rel = ord_s_ - min_s_;  // relative order of the unit part
    std::vector<Rat> u(c_.begin(), c_.end());
    std::vector<Rat> v(static_cast<std::size_t>(rel + 1), Rat(0));
    v[0] = Rat(1) / u[0];
    for (std::int64_t k = 1; k <= rel; ++k) {
      Rat acc(0);
      for (std::int64_t j = 1; j <= k; ++j)
        if (u[static_cast<std::size_t>(j)] != 0)
          acc += u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(k - j)];
      v[static_cast<std::size_t>(k)] = -acc / u[0];
    }
    Series r;
    r.denom_ = denom_;
    r.min_s_ = -min_s_;
    r.ord_s_ = ord_s_ - 2 * min_s_;
    r.c_ = std::move(v);
    r.normalize();
    return r;
  }

  Series pow(unsigned k) const {
    // repeated multiplication keeps the tightest truncation bookkeeping
    Series acc = Series::one(order(), denom_);
    for (unsigned i = 0; i < k; ++i) acc = acc * *this;
    return acc;
  }

  /// Smallest exponent at which the two series differ, checked through
  /// order N; nullopt when equal.
  static std::optional<Rat> first_mismatch(const Series& a, const Series& b, const Rat& N) {
    if (N > a.order() || N > b.order())
      throw OrderExceeded("equality check beyond a valid truncation");
    std::int64_t d = std::lcm(a.denom_, b.denom_);
    Series A = a.refined(d), B = b.refined(d);
    std::int64_t ns = scale_floor(N, d);
    std::int64_t lo = std::min(A.min_s_, B.min_s_);
    for (std::int64_t e = lo; e <= ns; ++e)
      if (A.at_scaled(e) != B.at_scaled(e)) return A.unscale(e);
    return std::nullopt;
  }

  static bool equal_to_order(const Series& a, const Series& b, const Rat& N) {
    return !first_mismatch(a, b, N).has_value();
  }

 private:
  static std::int64_t exponent_denom(const Rat& e) {
    Int d = boost::multiprecision::denominator(e);
    return static_cast<std::int64_t>(d);
  }

  static std::int64_t scale_exact(const Rat& e, std::int64_t denom) {
    Rat s = e * denom;
    if (boost::multiprecision::denominator(s) != 1)
      throw OffLatticeExponent("exponent " + e.str() + " not on lattice 1/" +
                               std::to_string(denom));
    return static_cast<std::int64_t>(boost::multiprecision::numerator(s));
  }

  static std::int64_t scale_floor(const Rat& e, std::int64_t denom) {
    Rat s = e * denom;
    Int num = boost::multiprecision::numerator(s);
    Int den = boost::multiprecision::denominator(s);
    Int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return static_cast<std::int64_t>(q);
  }

  Rat unscale(std::int64_t s) const { return Rat(s, denom_); }

  Rat at_scaled(std::int64_t e) const {
    if (e < min_s_) return Rat(0);
    std::int64_t idx = e - min_s_;
    if (idx >= static_cast<std::int64_t>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(idx)];
  }

  /// Re-express on a finer lattice (denom must be a multiple of denom_).
  Series refined(std::int64_t denom) const {
    if (denom == denom_) return *this;
    std::int64_t f = denom / denom_;
    Series s;
    s.denom_ = denom;
    s.min_s_ = min_s_ * f;
    s.ord_s_ = ord_s_ * f;
    s.c_.assign(static_cast<std::size_t>(s.ord_s_ - s.min_s_ + 1), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      s.c_[i * static_cast<std::size_t>(f)] = c_[i];
    return s;
  }

  static Series combine(const Series& a, const Series& b, bool subtract) {
    std::int64_t d = std::lcm(a.denom_, b.denom_);
    Series A = a.refined(d), B = b.refined(d);
    Series r;
    r.denom_ = d;
    r.ord_s_ = std::min(A.ord_s_, B.ord_s_);
    r.min_s_ = std::min(A.min_s_, B.min_s_);
    if (r.min_s_ > r.ord_s_) r.min_s_ = r.ord_s_;
    r.c_.assign(static_cast<std::size_t>(r.ord_s_ - r.min_s_ + 1), Rat(0));
    for (std::int64_t e = r.min_s_; e <= r.ord_s_; ++e) {
      Rat v = A.at_scaled(e);
      Rat w = B.at_scaled(e);
      r.c_[static_cast<std::size_t>(e - r.min_s_)] = subtract ? Rat(v - w) : Rat(v + w);
    }
    r.normalize();
    return r;
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead + 1 < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      min_s_ += static_cast<std::int64_t>(lead);
    }
    if (c_.size() == 1 && c_[0] == 0) min_s_ = ord_s_;
  }

  std::int64_t denom_;
  std::int64_t min_s_;
  std::int64_t ord_s_;
  std::vector<Rat> c_;
};

}  // namespace qgraph
