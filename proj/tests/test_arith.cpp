#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "arith.hpp"
#include "doctest.h"
#include "error.hpp"
#include "form.hpp"

using namespace qfdiv;
using namespace qfdiv::arith;

namespace {

u64 bruteDivisorSum(u64 x) {
  u64 total = 0;
  for (u64 k = 1; k <= x; ++k) total += x / k;
  return total;
}

bool bruteIsPrime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factor: small and prime inputs") {
  CHECK(factor(1).factors().empty());
  const auto f164 = factor(164);
  REQUIRE(f164.factors().size() == 2);
  CHECK(f164.factors()[0] == PrimePower{2, 2});
  CHECK(f164.factors()[1] == PrimePower{41, 1});
  const auto fp = factor(1000000007);
  REQUIRE(fp.factors().size() == 1);
  CHECK(fp.factors()[0] == PrimePower{1000000007, 1});
  CHECK_THROWS_AS(factor(0), DomainError);
}

TEST_CASE("factor: product reconstructs value, primes verified") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const u128 a = gen() >> 24;
    const u128 b = gen() >> 30;
    const u128 n = a * b + 1;
    const auto f = factor(n);
    u128 prod = 1;
    u128 last = 0;
    for (const auto& pp : f.factors()) {
      CHECK(pp.prime > last);
      CHECK(isPrime(pp.prime));
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
  // Product of two Mersenne primes forces the rho path.
  const u128 p = 524287;
  const u128 q = 2305843009213693951ULL;
  REQUIRE(isPrime(p));
  REQUIRE(isPrime(q));
  const auto f = factor(p * q);
  REQUIRE(f.factors().size() == 2);
  CHECK(f.factors()[0].prime == p);
  CHECK(f.factors()[1].prime == q);
}

TEST_CASE("factor: seed does not change results") {
  const u128 n = static_cast<u128>(1000003) * 1000033 * 998244353ULL;
  const auto a = factor(n);
  const u64 old = factorSeed();
  setFactorSeed(12345);
  const auto b = factor(n);
  setFactorSeed(old);
  CHECK(a.factors() == b.factors());
}

TEST_CASE("isPrime agrees with trial division") {
  for (u64 n = 0; n < 20000; ++n) CHECK(isPrime(n) == bruteIsPrime(n));
}

TEST_CASE("kronecker examples and multiplicativity") {
  CHECK(kronecker(-8, 3) == 1);
  CHECK(kronecker(-8, 5) == -1);
  for (i64 a = -20; a <= 20; ++a) CHECK(kronecker(a, 1) == 1);
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<i64> da(-1000, 1000);
  std::uniform_int_distribution<i64> dn(1, 1000);
  for (int i = 0; i < 10000; ++i) {
    const i64 a = da(gen);
    const i64 b = da(gen);
    const i64 m = dn(gen);
    const i64 n = dn(gen);
    CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
    CHECK(kronecker(a * b, m) == kronecker(a, m) * kronecker(b, m));
  }
}

TEST_CASE("chi of the form parameter") {
  const FormParameter two(2);
  CHECK(two.chi(3) == 1);
  CHECK(two.chi(5) == -1);
  CHECK(two.chi(2) == 0);
  CHECK(two.fundamentalDiscriminant() == -8);
  CHECK(FormParameter(67).fundamentalDiscriminant() == -67);
  CHECK(FormParameter(1).fundamentalDiscriminant() == -4);
  CHECK_THROWS_AS(FormParameter(5), DomainError);
  // Odd p coprime to N: Legendre symbol of -N.
  for (int n : kClassNumberOne) {
    const FormParameter f(n);
    for (u64 p : primesBelow(500)) {
      if (p == 2 || static_cast<u64>(n) % p == 0) continue;
      int count = 0;
      for (u64 v = 0; v < p; ++v) count += ((v * v + n) % p == 0);
      CHECK(f.chi(static_cast<i64>(p)) == count - 1);
    }
  }
}

TEST_CASE("sqrtMod") {
  CHECK(sqrtMod(-2, 17) == std::optional<std::pair<u64, u64>>({7, 10}));
  CHECK(sqrtMod(1, 5) == std::optional<std::pair<u64, u64>>({1, 4}));
  CHECK_FALSE(sqrtMod(3, 5).has_value());
  CHECK_THROWS_AS(sqrtMod(3, 9), DomainError);
  for (u64 p : primesBelow(10000)) {
    if (p == 2) continue;
    for (i64 a : {-163, -67, -7, -2, -1, 2, 3, 5, 10}) {
      if (static_cast<i64>(p) % std::abs(a) == 0 && std::abs(a) > 1) continue;
      if (static_cast<u64>(std::abs(a)) % p == 0) continue;
      const auto r = sqrtMod(a, p);
      CHECK(r.has_value() == (kronecker(a, static_cast<i64>(p)) == 1));
      if (r) {
        CHECK(mulmod(r->first, r->first, p) == modNonneg(a, p));
        CHECK(r->first + r->second == p);
      }
    }
  }
}

TEST_CASE("henselLift") {
  CHECK(henselLift(1, -2, 3, 2) == 4);
  CHECK(henselLift(7, -2, 17, 1) == 7);
  CHECK(henselLift(4, -2, 3, 3) == 22);
  for (u64 p : primesBelow(100)) {
    if (p == 2) continue;
    for (i64 a : {-2, -7, -67, 2, 3}) {
      if (static_cast<u64>(std::abs(a)) % p == 0) continue;
      const auto r = sqrtMod(a, p);
      if (!r) continue;
      u64 pk = p;
      for (unsigned k = 1; k <= 6; ++k) {
        const u64 w = henselLift(r->first, a, p, k);
        CHECK(mulmod(w, w, pk) == modNonneg(a, pk));
        CHECK(w % p == r->first);
        pk *= p;
      }
    }
  }
}

TEST_CASE("crtCombine") {
  const Residue a[] = {{1, 3}, {2, 5}};
  CHECK(crtCombine(a) == Residue{7, 15});
  const Residue b[] = {{0, 7}};
  CHECK(crtCombine(b) == Residue{0, 7});
  const Residue c[] = {{4, 9}, {7, 17}};
  CHECK(crtCombine(c) == Residue{58, 153});
  const Residue bad[] = {{1, 6}, {1, 4}};
  CHECK_THROWS_AS(crtCombine(bad), DomainError);
}

TEST_CASE("multiplicative functions") {
  CHECK(divisorCount(12) == 6);
  CHECK(mobius(4) == 0);
  CHECK(mobius(6) == 1);
  CHECK(eulerPhi(9) == 6);
  for (u64 n = 1; n <= 300; ++n) {
    u64 d = 0;
    u64 phi = 0;
    for (u64 k = 1; k <= n; ++k) {
      d += (n % k == 0);
      phi += (gcd(n, k) == 1);
    }
    CHECK(divisorCount(n) == d);
    CHECK(eulerPhi(n) == phi);
    const auto ds = divisors(factor(n));
    CHECK(ds.size() == d);
    int mu = 0;
    for (u64 k : ds) mu += mobius(k);
    CHECK(mu == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("ramanujanSum matches the exponential sum") {
  CHECK(ramanujanSum(1, 6) == 1);
  CHECK(ramanujanSum(2, 4) == -2);
  for (u64 d = 1; d <= 500; ++d) {
    CHECK(ramanujanSum(0, d) == static_cast<i64>(eulerPhi(d)));
    for (u64 w = 0; w < d; ++w) {
      double re = 0.0;
      for (u64 a = 1; a <= d; ++a) {
        if (gcd(a, d) != 1) continue;
        re += std::cos(2.0 * std::numbers::pi * static_cast<double>(a * w % d) /
                       static_cast<double>(d));
      }
      REQUIRE(std::abs(re - static_cast<double>(ramanujanSum(static_cast<i64>(w), d))) <
              1e-9 * static_cast<double>(d));
    }
  }
}

TEST_CASE("dirichletDivisorSum") {
  CHECK(dirichletDivisorSum(1) == 1);
  CHECK(dirichletDivisorSum(10) == 27);
  CHECK(dirichletDivisorSum(100) == bruteDivisorSum(100));
  for (u64 x = 1; x <= 2000; ++x) REQUIRE(dirichletDivisorSum(x) == bruteDivisorSum(x));
  const double gamma = 0.57721566490153286061;
  for (u64 x = 100; x <= 1000000; x += 997) {
    const double xd = static_cast<double>(x);
    const double main = xd * std::log(xd) + (2 * gamma - 1) * xd;
    CHECK(std::abs(static_cast<double>(dirichletDivisorSum(x)) - main) <= 4 * std::sqrt(xd));
  }
  CHECK_THROWS_AS(dirichletDivisorSum(kDivisorSumLimit + 1), DomainError);
}
