#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "expsums.hpp"
#include "roots.hpp"

using namespace qfdiv;
using namespace qfdiv::expsums;

namespace {

double directMagnitude(i64 h, u64 v, u64 d, u64 m) {
  std::complex<double> acc = 0.0;
  const u64 t = modNonneg(static_cast<i128>(h) * static_cast<i128>(v), d);
  for (u64 n = 1; n <= m; ++n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((n % d) * t % d) /
                         static_cast<double>(d);
    acc += std::polar(1.0, angle);
  }
  return std::abs(acc);
}

double directSieveSum(const FormParameter& f, u64 D, u64 H, u64 M) {
  double total = 0.0;
  for (u64 d = D + 1; d <= 2 * D; ++d) {
    for (u64 v = 0; v < d; ++v) {
      if ((v * v + static_cast<u64>(f.n())) % d != 0) continue;
      for (u64 h = 1; h <= H; ++h) {
        total += directMagnitude(static_cast<i64>(h), v, d, M) / static_cast<double>(h);
      }
    }
  }
  return total;
}

}  // namespace

TEST_CASE("geometric sum examples") {
  CHECK(geometricSumMagnitude(3, 4, 12, 7).magnitude == 7.0);
  CHECK(geometricSumMagnitude(1, 1, 2, 2).magnitude == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(geometricSumMagnitude(1, 1, 4, 4).magnitude == doctest::Approx(0.0).epsilon(1e-12));
  const auto g = geometricSumMagnitude(1, 1, 4, 4);
  CHECK(g.bound == doctest::Approx(2.0));
}

TEST_CASE("geometric closed form matches direct summation") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<u64> dd(1, 10000);
  for (int i = 0; i < 1000; ++i) {
    const u64 d = dd(gen);
    const u64 m = dd(gen);
    const u64 v = gen() % d;
    const i64 h = static_cast<i64>(gen() % 50) + 1;
    const double closed = geometricSumMagnitude(h, v, d, m).magnitude;
    const double direct = directMagnitude(h, v, d, m);
    REQUIRE(std::abs(closed - direct) <= 1e-8 * std::max(1.0, direct) + 1e-8 * std::sqrt(static_cast<double>(m)));
    CHECK(closed <= geometricSumMagnitude(h, v, d, m).bound * (1 + 1e-12) + 1e-9);
  }
}

TEST_CASE("large sieve sum against a direct evaluation") {
  const FormParameter two(2);
  const auto s = largeSieveSum(two, 2, 4, 4);
  CHECK(s.value == doctest::Approx(directSieveSum(two, 2, 4, 4)).epsilon(1e-12));
  for (int n : {1, 67, 163}) {
    const FormParameter f(n);
    CHECK(largeSieveSum(f, 20, 5, 9).value ==
          doctest::Approx(directSieveSum(f, 20, 5, 9)).epsilon(1e-10));
  }
}

TEST_CASE("H = M = 1 counts roots") {
  for (int n : {2, 67}) {
    const FormParameter f(n);
    for (u64 D : {1, 7, 50}) {
      u64 count = 0;
      for (u64 d = D + 1; d <= 2 * D; ++d) count += roots::rootsByLifting(f, d).size();
      CHECK(largeSieveSum(f, D, 1, 1).value == static_cast<double>(count));
    }
  }
}

TEST_CASE("monotone in H") {
  const FormParameter f(67);
  double prev = 0.0;
  for (u64 H = 1; H <= 12; ++H) {
    const double v = largeSieveSum(f, 64, H, 64).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("not monotone in M") {
  // d = 3, v = 1, h = 1: |sum| = 1, 1, 0 for M = 1, 2, 3.
  const FormParameter two(2);
  CHECK(largeSieveSum(two, 2, 1, 3).value < largeSieveSum(two, 2, 1, 2).value);
}

TEST_CASE("thread count does not change the value") {
  const FormParameter f(163);
  const double serial = largeSieveSum(f, 512, 8, 512, 1).value;
  CHECK(largeSieveSum(f, 512, 8, 512, 3).value == serial);
  CHECK(largeSieveSum(f, 512, 8, 512, 8).value == serial);
}

TEST_CASE("bound study") {
  const auto one = sieveBoundStudy(FormParameter(2), {64}, 16, MRule::kEqualD);
  CHECK(one.samples.size() == 1);
  CHECK(one.growth.empty());
  const auto st = sieveBoundStudy(FormParameter(163), {64, 128, 256}, 16, MRule::kSqrtD);
  CHECK(st.samples.size() == 3);
  for (const auto& s : st.samples) CHECK(std::isfinite(s.boundRatio));
  CHECK(lengthFor(MRule::kSquareD, 12) == 144);
  CHECK(lengthFor(MRule::kSqrtD, 17) == 4);
}
