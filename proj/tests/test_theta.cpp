#include "qgraph/indefinite_theta.hpp"
#include "qgraph/qseries.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qgraph;

namespace {

ConeThetaSpec d4_spec() {
  return {Rat(1, 2), Rat(2),    Rat(3, 2),
          Rat(3, 2), Rat(5, 2), Rat(0),
          Weight2D{{{Rat(2), 1, 0}, {Rat(1), 0, 0}}, 1, 1},
          {{Cone::PosPos, 1}}};
}

ConeThetaSpec d5_spec() {
  return {Rat(1, 2), Rat(3), Rat(3),
          Rat(3, 2), Rat(4), Rat(0),
          Weight2D{{{Rat(1), 2, 0}, {Rat(2), 1, 0}, {Rat(1), 0, 0}}, 1, 0},
          {{Cone::PosPos, 1}, {Cone::NegNeg, -1}}};
}

ConeThetaSpec te_spec() {
  return {Rat(1, 2), Rat(3), Rat(3),
          Rat(1, 2), Rat(1), Rat(0),
          Weight2D{{{Rat(2), 0, 0}}, 1, 0},
          {{Cone::PosPos, 1}, {Cone::NegNeg, -1}}};
}

}  // namespace

TEST_CASE("folded cone summation equals two-sided box summation") {
  Rat N(12);
  for (const ConeThetaSpec& spec : {d4_spec(), d5_spec(), te_spec()}) {
    Series fold = cone_sum(spec, N);
    Series box = cone_sum_box(spec, N, 36);
    CHECK(Series::equal_to_order(fold, box, N));
  }
}

TEST_CASE("triangular-number theta gives the cubed Euler product") {
  Rat N(25);
  WeightedTheta1D j{Rat(1, 2), Rat(1, 2), Rat(0), {{Rat(2), 1}, {Rat(1), 0}}, 1, false, 0};
  Series lhs = theta_1d(j, N);
  Series rhs = pochhammer(Rat(1), std::nullopt, N).pow(3).truncated(N);
  CHECK(Series::equal_to_order(lhs, rhs, N));
}

TEST_CASE("two-sided quadratic theta and the Euler product") {
  // sum_{n in Z} (-1)^n q^{n(3n+1)/2} = (q)_inf
  Rat N(20);
  WeightedTheta1D e{Rat(3, 2), Rat(1, 2), Rat(0), {{Rat(1), 0}}, 1, true, 0};
  Series lhs = theta_1d(e, N);
  Series rhs = pochhammer(Rat(1), std::nullopt, N).truncated(N);
  CHECK(Series::equal_to_order(lhs, rhs, N));
}

TEST_CASE("monotonicity and divergence guards") {
  // negative quadratic coefficient: exponents decrease along the cone
  ConeThetaSpec bad = d4_spec();
  bad.a = Rat(-1, 2);
  CHECK_THROWS_AS(cone_sum(bad, Rat(6)), NonMonotoneCone);
  WeightedTheta1D w{Rat(0), Rat(1), Rat(0), {{Rat(1), 0}}, 0, false, 0};
  CHECK_THROWS_AS(theta_1d(w, Rat(6)), DivergentRange);
}

TEST_CASE("negative-negative fold matches explicit reflection") {
  // NN cone of spec(a,h,c,d,e) is the PP cone of the reflected spec
  ConeThetaSpec spec = d5_spec();
  ConeThetaSpec nn_only = spec;
  nn_only.cones = {{Cone::NegNeg, 1}};
  ConeThetaSpec reflected = spec;
  reflected.d = 2 * spec.a + spec.h - spec.d;
  reflected.e = 2 * spec.c + spec.h - spec.e;
  reflected.const_exp = spec.a + spec.h + spec.c - spec.d - spec.e + spec.const_exp;
  reflected.cones = {{Cone::PosPos, 1}};
  // weight (n+1)^2 (-1)^n at n = -n'-1 becomes n'^2 (-1)^{n'+1}
  reflected.weight = Weight2D{{{Rat(-1), 2, 0}}, 1, 0};
  Series a = cone_sum(nn_only, Rat(12));
  Series b = cone_sum(reflected, Rat(12));
  CHECK(Series::equal_to_order(a, b, Rat(12)));
}
