#include <cmath>

#include "doctest.h"
#include "error.hpp"
#include "sums.hpp"

using namespace qfdiv;
using namespace qfdiv::sums;

TEST_CASE("brute force examples") {
  const FormParameter f(2);
  CHECK(bruteForceS(f, 1) == 2);
  CHECK(bruteForceS(f, 2) == 15);
  CHECK(bruteForceS(FormParameter(163), 1) == 6);
  CHECK_THROWS_AS(bruteForceS(f, 0), DomainError);
  CHECK_THROWS_AS(bruteForceS(f, 2001), DomainError);
  const auto series = bruteForceSeries(f, 30, 3);
  for (u64 x = 1; x <= 30; ++x) CHECK(series[x - 1] == bruteForceS(f, x));
}

TEST_CASE("hyperbola anchor") {
  const FormParameter f(2);
  const DecomposedSum d = hyperbolaS(f, 2, 1, true);
  CHECK(d.r == 10);
  CHECK(d.q == 1);
  CHECK(d.t == 4);
  CHECK(d.s == 15);
  CHECK(d.bound == 3);
  CHECK(d.threshold == 1);
  const DecomposedSum one = hyperbolaS(f, 1, 1);
  CHECK(one.bound == 1);
  CHECK(one.r == 1);
  CHECK(one.s == 2);
  CHECK(hyperbolaS(FormParameter(163), 1).s == 6);
  CHECK_THROWS_AS(hyperbolaS(f, 0), DomainError);
}

TEST_CASE("countPairsDivisibleBy against the scan") {
  CHECK(countPairsDivisibleBy(FormParameter(2), 1, 7) == 49);
  CHECK(countPairsDivisibleBy(FormParameter(2), 3, 2) == 4);
  CHECK(countPairsDivisibleBy(FormParameter(2), 2, 2) == 2);
  for (int n : kClassNumberOne) {
    const FormParameter f(n);
    for (u64 x : {1, 7, 24}) {
      for (u64 k = 1; k <= 300; ++k) {
        CHECK(countPairsDivisibleBy(f, k, x) == countPairsByScan(f, k, x));
      }
    }
  }
  CHECK_THROWS_AS(countPairsDivisibleBy(FormParameter(2), 0, 3), DomainError);
}

TEST_CASE("engine equivalence") {
  for (int n : {2, 67, 163, 1, 7}) {
    const FormParameter f(n);
    const auto brute = bruteForceSeries(f, 70, 4);
    for (u64 x = 1; x <= 70; ++x) {
      CHECK(hyperbolaS(f, x, 2).s == brute[x - 1]);
    }
  }
}

TEST_CASE("R is the sum of the per-k counts") {
  const FormParameter f(67);
  const u64 x = 30;
  const DecomposedSum d = hyperbolaS(f, x, 1);
  u64 r = 0;
  for (u64 k = 1; k <= d.bound; ++k) r += countPairsDivisibleBy(f, k, x);
  CHECK(r == d.r);
}

TEST_CASE("hyperbola is independent of the thread count") {
  const FormParameter f(163);
  const DecomposedSum a = hyperbolaS(f, 150, 1, true);
  const DecomposedSum b = hyperbolaS(f, 150, 7, true);
  CHECK(a.r == b.r);
  CHECK(a.q == b.q);
  CHECK(a.t == b.t);
  CHECK(a.qWide == b.qWide);
  CHECK(a.tWide == b.tWide);
}

TEST_CASE("threshold variants") {
  // For N = 1 both splits coincide.
  const DecomposedSum one = hyperbolaS(FormParameter(1), 80, 0, true);
  CHECK(one.threshold == one.wideThreshold);
  CHECK(one.sWide == static_cast<i64>(one.s));
  // For N > 1 the unboxed Q counts pairs with n > x, so 2R - Q - T undercounts.
  const DecomposedSum two = hyperbolaS(FormParameter(2), 100, 0, true);
  CHECK(two.wideThreshold > two.threshold);
  CHECK(two.sWide < static_cast<i64>(two.s));
  const DecomposedSum anchor = hyperbolaS(FormParameter(2), 2, 1, true);
  CHECK(anchor.qWide == 2);
  CHECK(anchor.tWide == 3);
  CHECK(anchor.sWide == 15);
}

TEST_CASE("constrained lattice count") {
  const FormParameter f(2);
  // N x / sqrt 3 < k <= sqrt 3 x at x = 10: 12 <= k <= 17.
  CHECK_THROWS_AS(latticeCountConstrained(f, 11, 10), DomainError);
  CHECK_THROWS_AS(latticeCountConstrained(f, 18, 10), DomainError);
  u64 scan = 0;
  const double lim = 15.0 * 10.0 * std::sqrt(3.0);
  for (u64 m = 1; m <= 10; ++m) {
    for (u64 n = 1; n <= 10; ++n) {
      if (static_cast<double>(n * n + 2 * m * m) <= lim) ++scan;
    }
  }
  CHECK(latticeCountConstrained(f, 15, 10).exact == scan);
  // At k = floor(sqrt 3 x) only pairs near the corner (10, 10) drop out.
  CHECK(latticeCountConstrained(f, 17, 10).exact == 99);
  for (int n : {2, 67, 163}) {
    const FormParameter g(n);
    for (u64 x = 5; x <= 200; x += 13) {
      const double r1 = std::sqrt(1.0 + n);
      const u64 lo = static_cast<u64>(std::floor(n * x / r1)) + 1;
      const u64 hi = static_cast<u64>(std::floor(r1 * x));
      for (u64 k = lo; k <= hi; ++k) {
        const auto c = latticeCountConstrained(g, k, x);
        const double xd = static_cast<double>(x);
        CHECK(std::abs(c.approximation - static_cast<double>(c.exact)) <= 2.0 * xd);
        const double area = xd * xd * constants::boxedEllipseArea(n, k * r1 / xd);
        CHECK(c.approximation == doctest::Approx(area).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("geometric grid and residual records") {
  CHECK(geometricGrid(512, 4096, 2.0) == std::vector<u64>{512, 1024, 2048, 4096});
  CHECK(geometricGrid(3, 3, 2.0) == std::vector<u64>{3});
  CHECK_THROWS_AS(geometricGrid(4, 3, 2.0), DomainError);
  CHECK_THROWS_AS(geometricGrid(1, 3, 1.0), DomainError);
  const FormParameter f(2);
  const auto k = constants::theoremConstants(f, 20000);
  const ResidualStudy single = residualStudy(f, {40}, k, 1);
  REQUIRE(single.records.size() == 1);
  CHECK_FALSE(single.slope.has_value());
  const ResidualRecord& r = single.records[0];
  CHECK(r.s == bruteForceS(f, 40));
  CHECK(r.residual == doctest::Approx(static_cast<double>(r.s) - r.mainTerm));
  CHECK(r.mainTerm == doctest::Approx(k.c1 * 1600 * std::log(40.0) + k.c2.value * 1600));
  CHECK(residualStudy(f, {40, 80}, k, 1).slope.has_value());
  CHECK_THROWS_AS(residualStudy(FormParameter(67), {40}, k, 1), DomainError);
}

TEST_CASE("piece shadows approach their main terms") {
  const FormParameter f(2);
  const auto k = constants::theoremConstants(f, 100000);
  const DecomposedSum lo = hyperbolaS(f, 256, 0, true);
  const DecomposedSum hi = hyperbolaS(f, 2048, 0, true);
  auto x2 = [](u64 x) { return static_cast<double>(x) * static_cast<double>(x); };
  auto gap = [&](const DecomposedSum& d, u64 v, double c) { return std::abs(static_cast<double>(v) / x2(d.x) - c); };
  // Printed Q constant for N = 2, where the character identity holds.
  CHECK(k.qWideMain == doctest::Approx(k.qConstant).epsilon(1e-12));
  CHECK(gap(hi, hi.qWide, k.qConstant) < gap(lo, lo.qWide, k.qConstant));
  CHECK(gap(hi, hi.q, k.qMain) < 0.01);
  CHECK(gap(hi, hi.t, k.tMain) < 0.01);
  CHECK(gap(hi, hi.tWide, k.tWideMain) < 0.01);
  auto rShadow = [&](const DecomposedSum& d) {
    return std::abs(static_cast<double>(d.r) / (x2(d.x) * std::log(static_cast<double>(d.x))) - 2 * k.a);
  };
  CHECK(rShadow(hi) < rShadow(lo));
  // R / x^2 - 2A log x approaches the R constant.
  CHECK(std::abs(static_cast<double>(hi.r) / x2(hi.x) - 2 * k.a * std::log(2048.0) - k.rMain) < 0.01);
  // The printed T coefficient is negative although T counts pairs.
  CHECK(k.tBracket < 0.0);
  CHECK(static_cast<double>(hi.tWide) / x2(hi.x) > 0.3);
}
