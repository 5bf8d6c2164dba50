#include "arith.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <string>

#include "error.hpp"

namespace qfdiv {

std::string toString(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string toString(i128 v) {
  if (v < 0) return "-" + toString(static_cast<u128>(-v));
  return toString(static_cast<u128>(v));
}

}  // namespace qfdiv

namespace qfdiv::arith {
namespace {

// Cofactors free of primes below this go straight to Miller-Rabin and rho.
constexpr u64 kTrialLimit = 1024;

std::atomic<u64> g_seed{0x5EEDF00DULL};

const std::vector<u64>& trialPrimes() {
  static const std::vector<u64> primes = primesBelow(kTrialLimit);
  return primes;
}

bool millerRabin64(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool millerRabin128(u128 n, u128 a) {
  if (a % n == 0) return true;
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u128 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u128 absDiff(u128 a, u128 b) { return a > b ? a - b : b - a; }

// Brent's variant of Pollard rho. n is odd, composite, not a prime power of
// a small prime.
u128 rhoSplit(u128 n, std::mt19937_64& rng) {
  for (;;) {
    const u128 c = 1 + static_cast<u128>(rng()) % (n - 1);
    u128 y = static_cast<u128>(rng()) % n;
    const u64 m = 128;
    u128 g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](u128 v) {
      v = mulmod(v, v, n) + c;
      return v >= n ? v - n : v;
    };
    while (g == 1) {
      x = y;
      for (u128 i = 0; i < r; ++i) y = f(y);
      u128 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u128 lim = std::min<u128>(m, r - k);
        for (u128 i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, absDiff(x, y), n);
        }
        g = gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(absDiff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void splitInto(u128 n, std::vector<u128>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (isPrime(n)) {
    out.push_back(n);
    return;
  }
  const u128 f = rhoSplit(n, rng);
  splitInto(f, out, rng);
  splitInto(n / f, out, rng);
}

}  // namespace

FactoredInteger::FactoredInteger(u128 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {}

u64 FactoredInteger::value64() const {
  if (value_ > UINT64_MAX) throw RangeError("factored value exceeds 64 bits");
  return static_cast<u64>(value_);
}

void setFactorSeed(u64 seed) { g_seed.store(seed); }
u64 factorSeed() { return g_seed.load(); }

bool isPrime(u128 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (u64 p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  if (n <= UINT64_MAX) {
    const u64 m = static_cast<u64>(n);
    for (u64 a : kSmall) {
      if (!millerRabin64(m, a)) return false;
    }
    return true;
  }
  // The first 13 prime bases are deterministic below 3.3e24 > 2^80.
  for (u64 a : kSmall) {
    if (!millerRabin128(n, a)) return false;
  }
  return true;
}

FactoredInteger factor(u128 n) {
  if (n == 0) throw DomainError("factor: zero has no factorization");
  if (n > kFactorLimit) throw RangeError("factor: input exceeds 2^80");
  const u128 original = n;
  std::vector<u128> primes;
  for (u64 p : trialPrimes()) {
    if (static_cast<u128>(p) * p > n) break;
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) {
    if (isPrime(n)) {
      primes.push_back(n);
    } else {
      std::mt19937_64 rng(factorSeed());
      splitInto(n, primes, rng);
    }
  }
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> factors;
  for (u128 p : primes) {
    if (!factors.empty() && factors.back().prime == p) {
      ++factors.back().exponent;
    } else {
      factors.push_back({p, 1});
    }
  }
  return FactoredInteger(original, std::move(factors));
}

int kronecker(i64 a, i64 n) {
  static constexpr int kTab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a % 2 == 0) && (n % 2 == 0)) return 0;
  int k = 1;
  u64 m = n < 0 ? static_cast<u64>(-(static_cast<i128>(n)))
                : static_cast<u64>(n);
  const int v = std::countr_zero(m);
  m >>= v;
  if (v % 2 == 1) k = kTab[a & 7];
  if (n < 0 && a < 0) k = -k;
  // m is odd and positive: the Jacobi symbol depends on a mod m only.
  u64 b = modNonneg(a, m);
  while (b != 0) {
    const int t = std::countr_zero(b);
    b >>= t;
    if ((t % 2 == 1) && (m % 8 == 3 || m % 8 == 5)) k = -k;
    if (b % 4 == 3 && m % 4 == 3) k = -k;
    const u64 r = m % b;
    m = b;
    b = r;
  }
  return m == 1 ? k : 0;
}

std::optional<std::pair<u64, u64>> sqrtMod(i64 a, u64 p) {
  if (p < 3 || p % 2 == 0 || !isPrime(p)) {
    throw DomainError("sqrtMod: modulus must be an odd prime");
  }
  const u64 r = modNonneg(a, p);
  if (r == 0) return std::make_pair<u64, u64>(0, 0);
  if (powmod(r, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 root = 0;
  if (p % 4 == 3) {
    root = powmod(r, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks with the smallest quadratic non-residue.
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(r, (q + 1) / 2, p);
    u64 t = powmod(r, q, p);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      u64 tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      u64 b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      x = mulmod(x, b, p);
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      m = i;
    }
    root = x;
  }
  const u64 other = p - root;
  return std::make_pair(std::min(root, other), std::max(root, other));
}

u64 inverseMod(i128 a, u64 m) {
  if (m == 0) throw DomainError("inverseMod: zero modulus");
  if (m == 1) return 0;
  i128 r0 = static_cast<i128>(m), r1 = modNonneg(a, m);
  i128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw DomainError("inverseMod: argument not invertible");
  return modNonneg(s0, m);
}

u64 henselLift(u64 root, i64 a, u64 p, unsigned k) {
  if (p < 3 || p % 2 == 0 || !isPrime(p)) {
    throw DomainError("henselLift: modulus must be an odd prime");
  }
  if (k == 0) throw DomainError("henselLift: exponent must be positive");
  u64 w = root % p;
  if (modNonneg(static_cast<i128>(w) * w - a, p) != 0) {
    throw DomainError("henselLift: input is not a root mod p");
  }
  if (w == 0) throw DomainError("henselLift: derivative 2*root vanishes mod p");
  u64 mod = p;
  for (unsigned i = 1; i < k; ++i) {
    if (mod > UINT64_MAX / p) throw RangeError("henselLift: p^k exceeds 64 bits");
    mod *= p;
    const u64 f = modNonneg(static_cast<i128>(mulmod(w, w, mod)) - a, mod);
    const u64 inv = inverseMod(static_cast<i128>(2) * w, mod);
    w = modNonneg(static_cast<i128>(w) - static_cast<i128>(mulmod(f, inv, mod)), mod);
  }
  return w;
}

Residue crtCombine(std::span<const Residue> residues) {
  Residue acc{0, 1};
  for (const Residue& r : residues) {
    if (r.modulus == 0) throw DomainError("crtCombine: zero modulus");
    if (gcd(acc.modulus, r.modulus) != 1) {
      throw DomainError("crtCombine: moduli are not pairwise coprime");
    }
    if (acc.modulus > (static_cast<u128>(1) << 126) / r.modulus) {
      throw RangeError("crtCombine: modulus product too large");
    }
    const u128 m2 = r.modulus;
    const u128 target = r.value % m2;
    const u128 cur = acc.value % m2;
    const u128 diff = (target + m2 - cur) % m2;
    // Inverse of acc.modulus mod m2 by extended Euclid in i128.
    i128 r0 = static_cast<i128>(m2), r1 = static_cast<i128>(acc.modulus % m2);
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
      const i128 q = r0 / r1;
      i128 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    i128 inv = s0 % static_cast<i128>(m2);
    if (inv < 0) inv += static_cast<i128>(m2);
    const u128 step = mulmod(diff, static_cast<u128>(inv), m2);
    acc.value = acc.value + acc.modulus * step;
    acc.modulus *= m2;
    acc.value %= acc.modulus;
  }
  return acc;
}

int mobius(const FactoredInteger& n) {
  int sign = 1;
  for (const auto& f : n.factors()) {
    if (f.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u128 eulerPhi(const FactoredInteger& n) {
  u128 phi = 1;
  for (const auto& f : n.factors()) {
    phi *= f.prime - 1;
    for (unsigned e = 1; e < f.exponent; ++e) phi *= f.prime;
  }
  return phi;
}

u64 divisorCount(const FactoredInteger& n) {
  u64 d = 1;
  for (const auto& f : n.factors()) d *= f.exponent + 1;
  return d;
}

int mobius(u64 n) { return mobius(factor(n)); }
u64 eulerPhi(u64 n) { return static_cast<u64>(eulerPhi(factor(n))); }
u64 divisorCount(u64 n) { return divisorCount(factor(n)); }

std::vector<u64> divisors(const FactoredInteger& n) {
  std::vector<u64> out{1};
  for (const auto& f : n.factors()) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= static_cast<u64>(f.prime);
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i64 ramanujanSum(i64 w, u64 d) {
  if (d == 0) throw DomainError("ramanujanSum: modulus must be positive");
  const u64 g = gcd(static_cast<u64>(w < 0 ? -static_cast<i128>(w) : w), d);
  const FactoredInteger fg = factor(g);
  i64 total = 0;
  for (u64 s : divisors(fg)) {
    total += static_cast<i64>(s) * mobius(d / s);
  }
  return total;
}

u64 dirichletDivisorSum(u64 x) {
  if (x == 0) throw DomainError("dirichletDivisorSum: x must be positive");
  if (x > kDivisorSumLimit) {
    throw DomainError("dirichletDivisorSum: x above the exact 64-bit range");
  }
  const u64 s = isqrt(x);
  u128 total = 0;
  for (u64 k = 1; k <= s; ++k) total += x / k;
  total = 2 * total - static_cast<u128>(s) * s;
  return static_cast<u64>(total);
}

std::vector<u64> primesBelow(u64 limit) {
  std::vector<u64> primes;
  if (limit <= 2) return primes;
  std::vector<bool> composite(limit, false);
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::uint32_t> smallestPrimeFactors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

}  // namespace qfdiv::arith
