#include "qgraph/graph_series.hpp"
#include "qgraph/jet.hpp"
#include "qgraph/qseries.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qgraph;

TEST_CASE("free ring: graded dimensions match 1/(q)inf^ell") {
  JetPresentation free2{2, {}};
  GradedDimensionTable t = hilbert_series(free2, 8);
  Series f = pochhammer(Rat(1), std::nullopt, Rat(8)).inverted().pow(2).truncated(Rat(8));
  CHECK(compare_with_series(t, f).match);
}

TEST_CASE("two lines: matches the two-node path series") {
  JetPresentation two{2, {{1, 2}}};
  GradedDimensionTable t = hilbert_series(two, 10);
  CHECK(compare_with_series(t, evaluate(builtin("A2"), Rat(10))).match);
}

TEST_CASE("fat point: distinct-difference partition dimensions") {
  JetPresentation fat{1, {{1, 1}}};
  GradedDimensionTable t = hilbert_series(fat, 12);
  std::vector<std::int64_t> want = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9};
  REQUIRE(t.dims.size() == want.size());
  for (std::size_t d = 0; d < want.size(); ++d) CHECK(t.dims[d] == want[d]);
}

TEST_CASE("graph presentations match graph series to degree 10") {
  for (const char* name : {"A2", "A3", "C3"}) {
    GraphSeriesSpec spec = builtin(name);
    GradedDimensionTable t = hilbert_series(presentation_of(spec.graph), 10);
    INFO(name);
    CHECK(t.primes.size() == 2);  // dual-prime certified
    CHECK(compare_with_series(t, evaluate(spec, Rat(10))).match);
  }
}

TEST_CASE("exact rational ranks agree with modular ranks") {
  JetPresentation fat{1, {{1, 1}}};
  GradedDimensionTable mod = hilbert_series(fat, 8);
  GradedDimensionTable ex = hilbert_series(fat, 8, RankMode::ExactRational);
  for (int d = 0; d <= 8; ++d)
    CHECK(mod.dims[static_cast<std::size_t>(d)] == ex.dims[static_cast<std::size_t>(d)]);
}

TEST_CASE("removing a relation never shrinks dimensions") {
  JetPresentation full = presentation_of(builtin("C3").graph);
  for (std::size_t drop = 0; drop < full.relations.size(); ++drop) {
    JetPresentation sub = full;
    sub.relations.erase(sub.relations.begin() + static_cast<std::ptrdiff_t>(drop));
    GradedDimensionTable tf = hilbert_series(full, 8);
    GradedDimensionTable ts = hilbert_series(sub, 8);
    for (int d = 0; d <= 8; ++d)
      CHECK(ts.dims[static_cast<std::size_t>(d)] >= tf.dims[static_cast<std::size_t>(d)]);
  }
}

TEST_CASE("coefficient pattern does not affect ranks") {
  GradedDimensionTable a = hilbert_series(presentation_of(builtin("C3").graph), 10);
  GradedDimensionTable b = hilbert_series(presentation_of(builtin("C3").graph), 10,
                                          RankMode::SinglePrime, 12345, true);
  for (int d = 0; d <= 10; ++d)
    CHECK(a.dims[static_cast<std::size_t>(d)] == b.dims[static_cast<std::size_t>(d)]);
}

TEST_CASE("budget guards") {
  JetPresentation fat{1, {{1, 1}}};
  CHECK_THROWS_AS(hilbert_series(fat, 15), BudgetExceeded);
  CHECK_THROWS_AS(hilbert_series(fat, 9, RankMode::ExactRational), BudgetExceeded);
}

TEST_CASE("presentation validation") {
  JetPresentation bad{2, {{1, 3}}};
  CHECK_THROWS_AS(bad.validate(), SpecViolation);
  JetPresentation dup{2, {{1, 2}, {2, 1}}};
  CHECK_THROWS_AS(dup.validate(), SpecViolation);
}

TEST_CASE("determinism under fixed seed") {
  GradedDimensionTable a = hilbert_series(presentation_of(builtin("A3").graph), 9,
                                          RankMode::DualPrime, 777);
  GradedDimensionTable b = hilbert_series(presentation_of(builtin("A3").graph), 9,
                                          RankMode::DualPrime, 777);
  CHECK(a.primes == b.primes);
  CHECK(a.dims == b.dims);
}
