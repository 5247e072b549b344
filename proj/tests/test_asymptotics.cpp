#include "qgraph/asymptotics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qgraph;

TEST_CASE("all seven cases pass on the default grid") {
  for (const AsymptoticCase& c : asymptotic_cases()) {
    AsymReport rep = check_case(c, default_grid());
    INFO(c.id);
    CHECK(rep.verdict == AsymVerdict::Pass);
    for (std::size_t i = 0; i + 1 < rep.residuals.size(); ++i)
      CHECK(std::fabs(rep.residuals[i + 1]) < std::fabs(rep.residuals[i]));
  }
}

TEST_CASE("one grid point is not enough") {
  AsymReport rep = check_case("A4", {0.1L});
  CHECK(rep.verdict == AsymVerdict::InsufficientGrid);
}

TEST_CASE("grid must descend, t must stay in range") {
  CHECK_THROWS_AS(check_case("A4", {0.1L, 0.2L}), SeriesError);
  CHECK_THROWS_AS(eval_case(find_case("A4"), 0.001L), SeriesError);
  CHECK_THROWS_AS(eval_case(find_case("A4"), 0.7L), SeriesError);
}

TEST_CASE("numeric evaluators agree with exact series at t = 0.5") {
  for (const AsymptoticCase& c : asymptotic_cases()) {
    Series s = series_quantity(c, Rat(60));
    long double exact = evaluate_series_at(s, 0.5L);
    long double numeric = eval_case(c, 0.5L);
    INFO(c.id);
    CHECK(std::fabs(exact - numeric) < 1e-10L);
  }
}

TEST_CASE("residual model sanity near the edge of the range") {
  // item 1 has the fully explicit closed form t/(1 - e^{-t}) - 1 ~ t/2
  const AsymptoticCase& a2 = find_case("A2");
  long double r = residual(a2, 0.01L);
  CHECK(std::fabs(r - 0.005L) < 1e-4L);
}

TEST_CASE("fit helper returns the expected linear coefficient for item 1") {
  // residual of item 1 is t/2 + t^2/12 + O(t^4)
  CorrectionFit fit = fit_correction(find_case("A2"), {0.2L, 0.1L, 0.05L, 0.025L});
  CHECK(std::fabs(fit.a_tlogt) < 1e-3L);
  CHECK(std::fabs(fit.b_t - 0.5L) < 1e-2L);
}

TEST_CASE("unknown case id") {
  CHECK_THROWS_AS(find_case("A9"), SeriesError);
}
