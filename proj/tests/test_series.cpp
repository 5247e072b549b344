#include "qgraph/series.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace qgraph;

namespace {

// random series on the integer or half-integer lattice, order 15
Series random_series(std::mt19937& rng, std::int64_t denom) {
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> minexp(-3, 2);
  Rat order(15);
  std::int64_t lo = minexp(rng) * denom;
  std::vector<Rat> c;
  for (std::int64_t e = lo; e <= 15 * denom; ++e) c.emplace_back(coeff(rng), den(rng));
  return Series::from_coeffs(c, lo, 15 * denom, denom);
}

bool same(const Series& a, const Series& b) {
  Rat n = std::min(a.order(), b.order());
  return !Series::first_mismatch(a, b, n).has_value();
}

}  // namespace

TEST_CASE("ring laws on random series") {
  std::mt19937 rng(20240817);
  for (int it = 0; it < 120; ++it) {
    std::int64_t denom = (it % 3 == 0) ? 2 : 1;
    Series a = random_series(rng, denom);
    Series b = random_series(rng, denom);
    Series c = random_series(rng, denom);
    CHECK(same((a + b) + c, a + (b + c)));
    CHECK(same(a + b, b + a));
    CHECK(same(a * b, b * a));
    CHECK(same((a * b) * c, a * (b * c)));
    CHECK(same(a * (b + c), a * b + a * c));
    CHECK(same(a - a, Series::zero(a.order())));
    CHECK(same(Rat(1) * a, a));
    CHECK(same(a * Series::one(Rat(15)), a));
  }
}

TEST_CASE("truncation is monotone and idempotent") {
  std::mt19937 rng(7);
  Series a = random_series(rng, 1);
  Series t10 = a.truncated(Rat(10));
  CHECK(t10.order() == Rat(10));
  CHECK(same(t10.truncated(Rat(10)), t10));
  Series t5 = t10.truncated(Rat(5));
  CHECK(same(a.truncated(Rat(5)), t5));
  // truncating a product equals the product of truncations at safe order
  Series b = random_series(rng, 1);
  CHECK(same((a * b).truncated(Rat(5)), (a.truncated(Rat(10)) * b.truncated(Rat(10))).truncated(Rat(5))));
}

TEST_CASE("inversion") {
  std::mt19937 rng(11);
  for (int it = 0; it < 30; ++it) {
    Series a = random_series(rng, 1);
    if (a.is_zero() || a.leading_coeff() == 0) continue;
    Series inv = a.inverted();
    Series prod = a * inv;
    Rat n = prod.order();
    CHECK(Series::equal_to_order(prod, Series::one(n).truncated(n), std::min(n, Rat(8))));
  }
  CHECK_THROWS_AS(Series::zero(Rat(5)).inverted(), ZeroLeadingCoefficient);
}

TEST_CASE("geometric series inverse, Laurent window") {
  // 1/(1 - q^{-1}) = -q/(1 - q) expanded in increasing exponents
  Series d = Series::one(Rat(10)) - Series::monomial(Rat(1), Rat(-1), Rat(10));
  Series inv = d.inverted();
  // leading term is -q, then -q^2, ...
  CHECK(inv.coeff(Rat(1)) == Rat(-1));
  CHECK(inv.coeff(Rat(2)) == Rat(-1));
  CHECK(inv.coeff(Rat(0)) == Rat(0));
  Series check = d * inv;
  CHECK(Series::equal_to_order(check, Series::one(check.order()), Rat(5)));
}

TEST_CASE("partition generating function against a counting oracle") {
  // oracle: dynamic program over part sizes
  const int N = 40;
  std::vector<long long> p(N + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int n = part; n <= N; ++n) p[n] += p[n - part];
  // product side: prod 1/(1-q^k)
  Series prod = Series::one(Rat(N));
  for (int k = 1; k <= N; ++k)
    prod = prod * (Series::one(Rat(N)) - Series::monomial(Rat(1), Rat(k), Rat(N))).inverted();
  prod = prod.truncated(Rat(N));
  for (int n = 0; n <= N; ++n) CHECK(prod.coeff(Rat(n)) == Rat(p[n]));
}

TEST_CASE("Euler product against the pentagonal-number oracle") {
  const int N = 40;
  Series prod = Series::one(Rat(N));
  for (int k = 1; k <= N; ++k)
    prod = prod * (Series::one(Rat(N)) - Series::monomial(Rat(1), Rat(k), Rat(N)));
  prod = prod.truncated(Rat(N));
  std::vector<long long> e(N + 1, 0);
  e[0] = 1;
  for (long long k = 1;; ++k) {
    long long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 > N) break;
    long long s = (k % 2 == 1) ? -1 : 1;
    if (g1 <= N) e[g1] += s;
    if (g2 <= N) e[g2] += s;
  }
  for (int n = 0; n <= N; ++n) CHECK(prod.coeff(Rat(n)) == Rat(e[n]));
}

TEST_CASE("first_mismatch across mixed lattices") {
  Series a = Series::monomial(Rat(1), Rat(1, 2), Rat(5));  // q^{1/2}
  Series b = Series::zero(Rat(5));
  auto m = Series::first_mismatch(a, b, Rat(5));
  REQUIRE(m.has_value());
  CHECK(*m == Rat(1, 2));
  Series c = Series::monomial(Rat(1), Rat(1, 2), Rat(5));
  CHECK(!Series::first_mismatch(a, c, Rat(5)).has_value());
  CHECK_THROWS_AS(Series::first_mismatch(a, b, Rat(100)), OrderExceeded);
}

TEST_CASE("off-lattice and order errors") {
  Series a = Series::monomial(Rat(1), Rat(1, 3), Rat(4), 3);
  CHECK(a.coeff(Rat(1, 3)) == Rat(1));
  CHECK(a.coeff(Rat(1, 2)) == Rat(0));  // off-lattice reads are zero
  CHECK_THROWS_AS(Series::monomial(Rat(1), Rat(9), Rat(5)), OrderExceeded);
}

TEST_CASE("shift and pow") {
  Series a = Series::monomial(Rat(2), Rat(1), Rat(6)) + Series::one(Rat(6));
  Series s = a.shifted(Rat(-1));
  CHECK(s.coeff(Rat(-1)) == Rat(1));
  CHECK(s.coeff(Rat(0)) == Rat(2));
  Series p = a.pow(3);
  CHECK(p.coeff(Rat(0)) == Rat(1));
  CHECK(p.coeff(Rat(1)) == Rat(6));
  CHECK(p.coeff(Rat(2)) == Rat(12));
  CHECK(p.coeff(Rat(3)) == Rat(8));
  CHECK(same(a.pow(0), Series::one(Rat(6))));
}
