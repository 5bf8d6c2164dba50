// Exact integer number theory shared by every other module.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wide.hpp"

namespace qfdiv::arith {

struct PrimePower {
  u128 prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

// n = prod p^e with primes strictly increasing.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  FactoredInteger(u128 value, std::vector<PrimePower> factors);

  u128 value() const { return value_; }
  u64 value64() const;
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool isOne() const { return factors_.empty(); }

 private:
  u128 value_ = 1;
  std::vector<PrimePower> factors_;
};

// Largest input accepted by factor().
inline constexpr u128 kFactorLimit = static_cast<u128>(1) << 80;

// Seed for the rho splitter. Changing it never changes results, only the
// order in which composite cofactors are split.
void setFactorSeed(u64 seed);
u64 factorSeed();

bool isPrime(u128 n);
FactoredInteger factor(u128 n);

// Kronecker symbol (a/n) with (a/2) from a mod 8 and (a/-1) = sign(a).
int kronecker(i64 a, i64 n);

// Roots of v^2 = a (mod p), p an odd prime. Returns {v, p - v} sorted, or
// nullopt for a non-residue. For p | a the single root 0 is returned twice.
std::optional<std::pair<u64, u64>> sqrtMod(i64 a, u64 p);

// Unique w mod p^k with w = root (mod p) and w^2 = a (mod p^k).
u64 henselLift(u64 root, i64 a, u64 p, unsigned k);

struct Residue {
  u128 value;
  u128 modulus;

  bool operator==(const Residue&) const = default;
};

Residue crtCombine(std::span<const Residue> residues);

// Modular inverse of a mod m; throws DomainError when gcd(a, m) != 1.
u64 inverseMod(i128 a, u64 m);

int mobius(const FactoredInteger& n);
u128 eulerPhi(const FactoredInteger& n);
u64 divisorCount(const FactoredInteger& n);
int mobius(u64 n);
u64 eulerPhi(u64 n);
u64 divisorCount(u64 n);

// All positive divisors in increasing order.
std::vector<u64> divisors(const FactoredInteger& n);

// R(w; d) = sum_{s | (w, d)} s mu(d / s).
i64 ramanujanSum(i64 w, u64 d);

// sum_{n <= x} d(n) by the hyperbola method.
inline constexpr u64 kDivisorSumLimit = 100'000'000'000'000'000ULL;
u64 dirichletDivisorSum(u64 x);

// Primes below limit (simple sieve of Eratosthenes).
std::vector<u64> primesBelow(u64 limit);

// Smallest-prime-factor table for 0..limit.
std::vector<std::uint32_t> smallestPrimeFactors(std::uint32_t limit);

}  // namespace qfdiv::arith
