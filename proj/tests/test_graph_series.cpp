#include "qgraph/graph_series.hpp"
#include "qgraph/qseries.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace qgraph;

namespace {

void check_coeffs(const Series& s, const std::vector<std::int64_t>& want, std::int64_t from = 0) {
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(s.coeff(Rat(from + static_cast<std::int64_t>(i))) == Rat(want[i]));
}

}  // namespace

TEST_CASE("frozen expansions") {
  check_coeffs(evaluate(builtin("A2"), Rat(8)), {1, 2, 4, 7, 12, 19, 30, 45, 67});
  check_coeffs(evaluate(builtin("C4"), Rat(9)), {1, 4, 10, 24, 48, 96, 174, 312, 531, 892});
  check_coeffs(evaluate(builtin("C5"), Rat(2)), {1, 5, 15});
  // one-node graph is the partition generating function
  Series a1 = evaluate(builtin("A1"), Rat(20));
  Series p = named_series("partitions", Rat(20)).truncated(Rat(20));
  CHECK(Series::equal_to_order(a1, p, Rat(20)));
}

TEST_CASE("relabeling invariance") {
  std::mt19937 rng(99);
  for (const char* name : {"A4", "D5", "C5", "E6", "B3"}) {
    GraphSeriesSpec spec = builtin(name);
    std::vector<int> perm(static_cast<std::size_t>(spec.graph.r));
    std::iota(perm.begin(), perm.end(), 0);
    for (int rep = 0; rep < 3; ++rep) {
      std::shuffle(perm.begin(), perm.end(), rng);
      GraphSeriesSpec p = permuted(spec, perm);
      Series a = evaluate(spec, Rat(12), Method::Enumerate);
      Series b = evaluate(p, Rat(12), Method::Enumerate);
      CHECK(Series::equal_to_order(a, b, Rat(12)));
    }
  }
}

TEST_CASE("disjoint union multiplies") {
  GraphSeriesSpec a = builtin("A3");
  GraphSeriesSpec b = builtin("C3");
  GraphSeriesSpec u = disjoint_union(a, b);
  Series su = evaluate(u, Rat(15));
  Series prod = (evaluate(a, Rat(15)) * evaluate(b, Rat(15))).truncated(Rat(15));
  CHECK(Series::equal_to_order(su, prod, Rat(15)));
}

TEST_CASE("enumerate agrees with tree-dp on forests and unicyclic graphs") {
  for (const char* name : {"A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "E6", "B2", "B3",
                           "X3", "X4", "X5", "H", "T2tree", "C3", "C4", "C5", "T2"}) {
    GraphSeriesSpec spec = builtin(name);
    Rat N(spec.graph.r >= 6 ? 20 : 22);
    Series e = evaluate(spec, N, Method::Enumerate);
    Series t = evaluate(spec, N, Method::TreeDp);
    INFO(name);
    CHECK(Series::equal_to_order(e, t, N));
  }
}

TEST_CASE("tree-dp rejects higher cycle rank") {
  CHECK_THROWS_AS(evaluate(builtin("Gamma8"), Rat(6), Method::TreeDp), UnsupportedTopology);
}

TEST_CASE("spec validation") {
  // shifts below 1 would break truncation soundness
  GraphSeriesSpec s = builtin("A2");
  s.b = {Rat(0), Rat(1)};
  CHECK_THROWS_AS(s.validate(), SpecViolation);
  s.b = {Rat(1), Rat(1)};
  s.denom_offset = {-1, 0};
  CHECK_THROWS_AS(s.validate(), SpecViolation);
}

TEST_CASE("coset shifts change the series") {
  Series f1 = evaluate(builtin("B2"), Rat(10));
  GraphSeriesSpec s = builtin("B2");
  s.b = {Rat(1), Rat(2)};
  Series f2 = evaluate(s, Rat(10));
  CHECK(Series::first_mismatch(f1, f2, Rat(10)).has_value());
}

TEST_CASE("half-integer shifts land on the half-integer lattice") {
  GraphSeriesSpec s = builtin("A2");
  s.b = {Rat(3, 2), Rat(1)};
  Series h = evaluate(s, Rat(8));
  bool has_half = false;
  for (const auto& [e, c] : h.terms())
    if (boost::multiprecision::denominator(e) == 2) has_half = true;
  CHECK(has_half);
}
