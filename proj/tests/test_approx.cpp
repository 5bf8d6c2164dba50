#include <cmath>
#include <tuple>

#include "approx.hpp"
#include "doctest.h"
#include "error.hpp"

using namespace qfdiv;
using namespace qfdiv::approx;

namespace {

// Every reduced a/q with q <= qMax satisfying the inequality, by scanning all a.
std::vector<Fraction> allFractions(u64 d, u64 v, u64 qMax) {
  std::vector<Fraction> out;
  for (u64 q = 1; q <= qMax; ++q) {
    for (i64 a = -1; a <= static_cast<i64>(q) + 1; ++a) {
      if (gcd(static_cast<u64>(a < 0 ? -a : a), q) != 1) continue;
      // |v/d - a/q| <= 1/q^2  <=>  |v q - a d| q <= d.
      const i64 num = std::llabs(static_cast<i64>(v * q) - a * static_cast<i64>(d));
      if (static_cast<u64>(num) * q <= d) out.push_back({a, q});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("wellApproximates examples") {
  CHECK(wellApproximates(4, 9, 1, 2));
  CHECK(wellApproximates(7, 17, 1, 2));
  CHECK(wellApproximates(7, 17, 1, 3));
  CHECK_FALSE(wellApproximates(7, 17, 1, 4));
}

TEST_CASE("approximate examples") {
  const FormParameter two(2);
  const auto a7 = approximate(two, 17, 7);
  CHECK(wellApproximates(7, 17, a7.a, a7.q));
  CHECK(a7.constructionPasses);
  CHECK((a7.construction.q == 2 || a7.construction.q == 3));
  const auto a4 = approximate(two, 9, 4);
  CHECK(wellApproximates(4, 9, a4.a, a4.q));
  CHECK(wellApproximates(4, 9, 1, 2));
  const FormParameter f67(67);
  for (u64 v : {u64{2}, u64{69}}) {
    const auto ap = approximate(f67, 71, v);
    CHECK(wellApproximates(v, 71, ap.a, ap.q));
    CHECK(ap.q <= static_cast<u64>(std::ceil(2 * std::sqrt(71.0))));
  }
  CHECK_THROWS_AS(approximate(two, 17, 6), DomainError);
  CHECK_THROWS_AS(approximate(FormParameter(7), 8, 1), DomainError);
}

TEST_CASE("nearest fraction agrees with a full scan over numerators") {
  for (int n : {1, 2, 67, 163}) {
    const FormParameter f(n);
    for (u64 d = 1; d <= 400; ++d) {
      const auto rs = roots::rootsByLifting(f, d);
      const u64 qMax = static_cast<u64>(isqrt(static_cast<u128>(4) * d)) + 1;
      for (u64 v : rs.roots) {
        const auto fr = allFractions(d, v, qMax);
        REQUIRE_FALSE(fr.empty());
        // Closest q to sqrt(d), then the smaller q, the smaller error, the smaller a.
        auto key = [&](const Fraction& x) {
          const i64 gap = std::llabs(static_cast<i64>(x.q * x.q) - static_cast<i64>(d));
          const i64 err = std::llabs(static_cast<i64>(v * x.q) - x.a * static_cast<i64>(d));
          return std::tuple<i64, u64, i64, i64>(gap, x.q, err, x.a);
        };
        Fraction best = fr.front();
        for (const auto& x : fr) {
          if (key(x) < key(best)) best = x;
        }
        const auto got = nearestSqrtFraction(d, v);
        REQUIRE(got.q == best.q);
        REQUIRE(got.a == best.a);
      }
    }
  }
}

TEST_CASE("the s-denominator candidate always satisfies the inequality") {
  for (int n : {67, 163}) {
    const FormParameter f(n);
    for (u64 d = 3; d <= 5000; d += 2) {
      if (roots::classify(f, d) != roots::Branch::kCoprime) continue;
      for (const auto& pr : roots::pairedRoots(f, arith::factor(d))) {
        if (pr.s == 0) continue;
        const i128 a = (static_cast<i128>(pr.root) * pr.s - pr.r) / static_cast<i128>(d);
        const i64 sgn = pr.s < 0 ? -1 : 1;
        REQUIRE(wellApproximates(pr.root, d, static_cast<i64>(a) * sgn,
                                 static_cast<u64>(pr.s * sgn)));
      }
    }
  }
}

TEST_CASE("denominator statistics") {
  const auto s2 = denominatorStatistics(FormParameter(2), 10000);
  CHECK(s2.failures == 0);
  CHECK(s2.c1 > 0.0);
  const auto s163 = denominatorStatistics(FormParameter(163), 10000);
  CHECK(s163.failures == 0);
  CHECK(std::isfinite(s163.c2));
  CHECK(s163.c2 <= 2.0 + 1e-12);
  const auto s1 = denominatorStatistics(FormParameter(163), 1);
  CHECK(s1.samples == 1);
  CHECK(s1.c1 == doctest::Approx(1.0));
}

TEST_CASE("approximation congruences after clearing denominators") {
  // r^2 + N s^2 = c d: the residues are -c r~ / s and c s~ / r.
  for (int n : {67, 163}) {
    const FormParameter f(n);
    for (u64 d = 3; d <= 5000; d += 2) {
      if (roots::classify(f, d) != roots::Branch::kCoprime) continue;
      for (const auto& pr : roots::pairedRoots(f, arith::factor(d))) {
        const i128 norm = static_cast<i128>(pr.r) * pr.r + static_cast<i128>(n) * pr.s * pr.s;
        REQUIRE(norm % d == 0);
        const i64 c = static_cast<i64>(norm / d);
        REQUIRE((c == 1 || c == 4));
        const auto chk = checkApproximationCongruences(f, d, pr.root, pr.r, pr.s, c);
        REQUIRE(chk.sDenominator);
        REQUIRE(chk.rDenominator);
      }
    }
  }
  // Without the factor c = 4 the residues are wrong: 4 * 419 = 1 + 67 * 25, v = 84.
  const FormParameter f67(67);
  const auto plain = checkApproximationCongruences(f67, 419, 84, 1, 5, 1);
  CHECK_FALSE(plain.sDenominator);
  const auto scaled = checkApproximationCongruences(f67, 419, 84, 1, 5, 4);
  CHECK(scaled.sDenominator);
  CHECK(scaled.rDenominator);
}
