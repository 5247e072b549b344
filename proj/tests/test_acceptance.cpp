// Acceptance gate: one line per criterion, "PASS"/"FAIL" prefix, exit 1
// if anything fails. Criteria are re-derived here from the public API
// rather than reusing the unit tests.

#include "qgraph/asymptotics.hpp"
#include "qgraph/graph_series.hpp"
#include "qgraph/identities.hpp"
#include "qgraph/indefinite_theta.hpp"
#include "qgraph/jet.hpp"
#include "qgraph/qseries.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace qgraph;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, double secs) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << n << ": " << what << " ("
            << secs << "s)\n";
  if (!ok) ++failures;
}

template <typename F>
void run(int n, const std::string& what, F f) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = f();
  } catch (const std::exception& e) {
    std::cout << "  exception: " << e.what() << "\n";
  }
  auto t1 = std::chrono::steady_clock::now();
  report(n, what, ok, std::chrono::duration<double>(t1 - t0).count());
}

bool eq(const Series& a, const Series& b, const Rat& N) {
  return !Series::first_mismatch(a, b, N).has_value();
}

}  // namespace

int main() {
  run(1, "identity suite verifies at default orders with no failures", [] {
    bool ok = true;
    for (const Report& r : verify_all()) {
      if (r.status == VerifyStatus::Fail) {
        std::cout << "  failing entry: " << r.id << "\n";
        ok = false;
      }
    }
    return ok;
  });

  run(2, "prefactor resolutions for C5 / GAMMA8 / E6 select the derived power", [] {
    bool ok = true;
    for (const char* id : {"C5", "GAMMA8", "E6"}) {
      Report r = verify(id);
      const InstanceReport& ir = r.instances.front();
      ok = ok && r.status == VerifyStatus::ResolvedVariant &&
           ir.matched_rhs == "derived-prefactor" && ir.mismatch_exp.has_value();
    }
    // hand-checkable datum: C5 printed form first differs at q^1, 5 vs 4
    Report c5 = verify("C5");
    const InstanceReport& ir = c5.instances.front();
    ok = ok && *ir.mismatch_exp == Rat(1) && ir.lhs_coeff == Rat(5) && ir.rhs_coeff == Rat(4);
    return ok;
  });

  run(3, "four-way D4 equality to order 40", [] {
    Rat N(40), M = N + 1;
    Series graph = evaluate(builtin("D4"), N);
    Series ip = pochhammer(Rat(1), std::nullopt, M).inverted();
    Series lerch = ((ip.pow(4) * (named_series("I1", M) - lambert_sum(0, 2, M) +
                                  named_series("I2", M)))
                        .truncated(M))
                       .shifted(Rat(-1));
    Series uform =
        ((ip.pow(3) * named_series("U1", M)).truncated(M)).shifted(Rat(-1));
    ConeThetaSpec d4{Rat(1, 2), Rat(2),    Rat(3, 2),
                     Rat(3, 2), Rat(5, 2), Rat(0),
                     Weight2D{{{Rat(2), 1, 0}, {Rat(1), 0, 0}}, 1, 1},
                     {{Cone::PosPos, 1}}};
    Series cone = (pochhammer(Rat(1), std::nullopt, N).inverted().pow(4) * cone_sum(d4, N))
                      .truncated(N);
    return eq(graph, lerch, N) && eq(graph, uform, N) && eq(graph, cone, N);
  });

  run(4, "jet-algebra oracle reproduces graph series and the standard examples", [] {
    bool ok = true;
    for (const char* name : {"A2", "A3", "C3"}) {
      GraphSeriesSpec spec = builtin(name);
      GradedDimensionTable t = hilbert_series(presentation_of(spec.graph), 10);
      ok = ok && t.primes.size() == 2 && compare_with_series(t, evaluate(spec, Rat(10))).match;
    }
    GradedDimensionTable fr = hilbert_series(JetPresentation{2, {}}, 8);
    Series free2 =
        pochhammer(Rat(1), std::nullopt, Rat(8)).inverted().pow(2).truncated(Rat(8));
    ok = ok && compare_with_series(fr, free2).match;
    GradedDimensionTable two = hilbert_series(JetPresentation{2, {{1, 2}}}, 10);
    ok = ok && compare_with_series(two, evaluate(builtin("A2"), Rat(10))).match;
    GradedDimensionTable fat = hilbert_series(JetPresentation{1, {{1, 1}}}, 12);
    const std::vector<std::int64_t> want = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9};
    ok = ok && fat.dims == want;
    return ok;
  });

  run(5, "Bailey pair holds termwise for n <= 20", [] {
    Report r = verify("BAILEY-D5");
    return r.status == VerifyStatus::Pass && r.instances.size() == 21;
  });

  run(6, "all seven asymptotic items pass on the default grid", [] {
    bool ok = true;
    for (const AsymptoticCase& c : asymptotic_cases())
      ok = ok && check_case(c, default_grid()).verdict == AsymVerdict::Pass;
    return ok;
  });

  run(7, "property suites", [] {
    bool ok = true;
    // series ring laws, 100 random cases at order 15
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coeff(-5, 5);
    auto rnd = [&] {
      std::vector<Rat> c;
      for (int e = -2; e <= 15; ++e) c.emplace_back(coeff(rng));
      return Series::from_coeffs(c, -2, 15, 1);
    };
    for (int i = 0; i < 100 && ok; ++i) {
      Series a = rnd(), b = rnd(), c = rnd();
      Rat n = ((a * b) * c).order();
      ok = ok && eq((a * b) * c, a * (b * c), n) && eq(a * (b + c), a * b + a * c, n) &&
           eq(a * b, b * a, n);
    }
    // relabeling invariance
    {
      GraphSeriesSpec spec = builtin("D5");
      std::vector<int> perm = {4, 2, 0, 1, 3};
      ok = ok && eq(evaluate(spec, Rat(12)), evaluate(permuted(spec, perm), Rat(12)), Rat(12));
    }
    // disjoint-union multiplicativity
    {
      GraphSeriesSpec a = builtin("A2"), b = builtin("C3");
      Series prod = (evaluate(a, Rat(12)) * evaluate(b, Rat(12))).truncated(Rat(12));
      ok = ok && eq(evaluate(disjoint_union(a, b), Rat(12)), prod, Rat(12));
    }
    // enumerate == tree-dp on every forest/unicyclic builtin at order >= 20
    for (const std::string& name : builtin_names()) {
      GraphSeriesSpec spec = builtin(name);
      Rat N(20);
      try {
        Series e = evaluate(spec, N, Method::TreeDp);
        ok = ok && eq(e, evaluate(spec, N, Method::Enumerate), N);
      } catch (const UnsupportedTopology&) {
        // cycle rank >= 2 is enumerate-only
      }
    }
    // cone folding == two-sided box summation at order 12
    {
      ConeThetaSpec d5{Rat(1, 2), Rat(3), Rat(3),
                       Rat(3, 2), Rat(4), Rat(0),
                       Weight2D{{{Rat(1), 2, 0}, {Rat(2), 1, 0}, {Rat(1), 0, 0}}, 1, 0},
                       {{Cone::PosPos, 1}, {Cone::NegNeg, -1}}};
      ok = ok && eq(cone_sum(d5, Rat(12)), cone_sum_box(d5, Rat(12), 36), Rat(12));
    }
    // Euler / two-parameter transformations at powers of q
    {
      Rat N(25);
      PochhammerTable t = make_pochhammer_table(25, N);
      for (int k = 1; k <= 3 && ok; ++k) {
        Series lhs = Series::zero(N);
        for (std::int64_t n = 0; k * n <= 25; ++n)
          lhs = lhs +
                t.inv_poch[static_cast<std::size_t>(n)].truncated(N - k * n).shifted(Rat(k * n));
        ok = ok && eq(lhs, pochhammer(Rat(k), std::nullopt, N).inverted().truncated(N), N);
      }
      for (int s = 1; s <= 3 && ok; ++s)
        for (int tt = 1; tt <= 3 && ok; ++tt) {
          Series lhs = Series::zero(N);
          for (std::int64_t n = 0; tt * n <= 25; ++n)
            lhs = lhs + (pochhammer(Rat(s + 1), n, N) * t.inv_poch[static_cast<std::size_t>(n)])
                            .truncated(N - tt * n)
                            .shifted(Rat(tt * n));
          Series rhs = (pochhammer(Rat(s + tt + 1), std::nullopt, N) *
                        pochhammer(Rat(tt), std::nullopt, N).inverted())
                           .truncated(N);
          ok = ok && eq(lhs, rhs, N);
        }
    }
    return ok;
  });

  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: failures present")
            << "\n";
  return failures == 0 ? 0 : 1;
}
