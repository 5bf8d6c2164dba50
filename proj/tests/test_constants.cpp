#include <cmath>
#include <numbers>

#include "constants.hpp"
#include "doctest.h"
#include "error.hpp"

using namespace qfdiv;
using namespace qfdiv::constants;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("hurwitz and digamma against known values") {
  CHECK(hurwitzZeta2(1.0) == doctest::Approx(kPi * kPi / 6).epsilon(1e-14));
  CHECK(hurwitzZeta2(0.5) == doctest::Approx(kPi * kPi / 2).epsilon(1e-14));
  CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-0.57721566490153286 - 2 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("L(1) matches the class number formula") {
  CHECK(std::abs(lValue(FormParameter(2), 1) - kPi / (2 * std::sqrt(2.0))) < 1e-10);
  CHECK(std::abs(lValue(FormParameter(67), 1) - kPi / std::sqrt(67.0)) < 1e-10);
  CHECK(std::abs(lValue(FormParameter(163), 1) - kPi / std::sqrt(163.0)) < 1e-10);
  for (int n : kClassNumberOne) {
    const FormParameter f(n);
    CHECK(std::abs(lValue(f, 1) - classNumberL1(f)) < 1e-10);
  }
}

TEST_CASE("L(2) against direct series") {
  // Catalan's constant for chi_{-4}.
  CHECK(lValue(FormParameter(1), 2) == doctest::Approx(0.915965594177219015).epsilon(1e-13));
  const FormParameter f(2);
  double direct = 0.0;
  for (long k = 1; k <= 2000000; ++k) direct += f.chi(k) / (static_cast<double>(k) * k);
  CHECK(std::abs(lValue(f, 2) - direct) < 1e-6);
  CHECK_THROWS_AS(lValue(f, 3), DomainError);
}

TEST_CASE("Q constant sanity window for N = 2") {
  const double l2 = lValue(FormParameter(2), 2);
  CHECK(l2 > 0.8);
  CHECK(l2 < 1.2);
  const double q = kPi * kPi / (8 * l2);
  CHECK(q > 0.8);
  CHECK(q < 1.4);
}

TEST_CASE("Euler product truncation") {
  const FormParameter f(2);
  CHECK(rho::localFactorG(f, 3, 2.0) == doctest::Approx(1.0 - 1.0 / 27).epsilon(1e-15));
  CHECK(rho::localFactorG(f, 5, 2.0) == doctest::Approx(1.0 + 1.0 / 125).epsilon(1e-15));
  for (int n : {2, 67, 163}) {
    const FormParameter g(n);
    const Interval small = gEuler(g, 2, 1000);
    const Interval large = gEuler(g, 2, 100000);
    CHECK(std::abs(small.value - large.value) < 1e-6);
    CHECK(std::abs(small.value - large.value) <= small.halfwidth);
    const Interval doubled = gEuler(g, 2, 2000);
    CHECK(std::abs(doubled.value - small.value) <= small.halfwidth);
  }
}

TEST_CASE("G at the residue point: closed form against the truncated product") {
  for (int n : {1, 2, 67, 163}) {
    const FormParameter f(n);
    const Interval g = gEuler(f, 1, 1000000);
    CHECK(std::abs(gResidue(f) - g.value) <= g.halfwidth);
  }
  CHECK_THROWS_AS(gEuler(FormParameter(2), 3, 100), DomainError);
}

TEST_CASE("A is the mean of rho: E_N(y) / y^2 tends to 0") {
  for (int n : {2, 67, 163}) {
    const FormParameter f(n);
    const rho::RhoTable table(f, 400000);
    const double a = lValue(f, 1) * gResidue(f) / 2;
    const double aPrinted = lValue(f, 1) * gEuler(f, 2).value / 2;
    const double y = 400000.0;
    CHECK(std::abs(table.errorFunction(y, a)) / (y * y) < 1e-3);
    // The G_N(2) normalisation leaves a constant offset.
    CHECK(std::abs(table.errorFunction(y, aPrinted)) / (y * y) > 1e-2);
  }
}

TEST_CASE("E-integral") {
  const FormParameter f(2);
  const rho::RhoTable table(f, 400000);
  const double a = lValue(f, 1) * gResidue(f) / 2;
  const double c = 2 * empiricalErrorConstant(table, a);
  const Interval one = eIntegral(table, 1, a, c);
  CHECK(one.value == 0.0);
  CHECK(one.halfwidth > 0.0);
  const Interval i1 = eIntegral(table, 100000, a, c);
  const Interval i4 = eIntegral(table, 400000, a, c);
  CHECK(i4.halfwidth < i1.halfwidth);
  CHECK(std::abs(i1.value - i4.value) <= i1.halfwidth + i4.halfwidth);
  CHECK_THROWS_AS(eIntegral(table, 0, a, c), DomainError);
  CHECK_THROWS_AS(eIntegral(table, 400001, a, c), DomainError);
}

TEST_CASE("E-integral matches direct quadrature of the step function") {
  const FormParameter f(67);
  const rho::RhoTable table(f, 2000);
  const double a = 0.2;
  double direct = 0.0;
  for (u64 d = 1; d < 500; ++d) {
    const double s = static_cast<double>(table.partialRho(d));
    const double lo = static_cast<double>(d), hi = lo + 1;
    direct += s * (0.5 / (lo * lo) - 0.5 / (hi * hi)) - a * std::log(hi / lo);
  }
  CHECK(eIntegral(table, 500, a, 1.0).value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("theorem constants") {
  const FormParameter f(2);
  const rho::RhoTable table(f, 400000);
  const AsymptoticConstants k = theoremConstants(table, 100000);
  CHECK(k.a == k.l1 * k.g1 / 2);
  CHECK(k.aPrinted == k.l1 * k.g2.value / 2);
  CHECK(k.c1 == 4 * k.a);
  CHECK(k.c1 == doctest::Approx(2 * (kPi / (2 * std::sqrt(2.0))) * k.g1).epsilon(1e-10));
  CHECK(k.c2.halfwidth == 4 * k.eIntegral.halfwidth);
  CHECK_FALSE(k.flagged);
  const AsymptoticConstants k4 = theoremConstants(table, 400000);
  CHECK(std::abs(k.c2.value - k4.c2.value) <= k.c2.halfwidth + k4.c2.halfwidth);
  CHECK(theoremConstants(FormParameter(1), 2000).flagged);
  CHECK_THROWS_AS(theoremConstants(FormParameter(7), 2000), DomainError);
}
