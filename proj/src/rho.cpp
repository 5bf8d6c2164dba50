#include "rho.hpp"

#include <cmath>
#include <unordered_map>

#include "error.hpp"
#include "parallel.hpp"
#include "roots.hpp"

namespace qfdiv::rho {

namespace {

bool isGood(const FormParameter& form, u64 p) {
  return p != 2 && static_cast<u64>(form.n()) % p != 0;
}

u64 ipow(u64 p, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

// Largest modulus the local-factor series enumerates directly.
constexpr u64 kEnumerationCap = u64{1} << 23;

// rho(p^k) - (1 + chi) p rho(p^{k-1}) + chi p^2 rho(p^{k-2}): the numerator of
// g(p^k) p^k, exact.
i128 gNumerator(const std::vector<u64>& rhoPowers, u64 p, int chi, unsigned k) {
  const i128 pp = static_cast<i128>(p);
  i128 v = static_cast<i128>(rhoPowers[k]);
  if (k >= 1) v -= (1 + chi) * pp * static_cast<i128>(rhoPowers[k - 1]);
  if (k >= 2) v += chi * pp * pp * static_cast<i128>(rhoPowers[k - 2]);
  return v;
}

}  // namespace

u64 rho0(const FormParameter& form, const arith::FactoredInteger& d) {
  return roots::rootCount(form, d);
}

u64 rho0(const FormParameter& form, u64 d) {
  if (d == 0) throw DomainError("rho0 needs d >= 1");
  return roots::rootCount(form, arith::factor(d));
}

u64 rhoByEnumeration(const FormParameter& form, u64 m) {
  if (m == 0) throw DomainError("rhoByEnumeration needs m >= 1");
  std::vector<std::uint32_t> squares(m, 0);
  for (u64 u = 0; u < m; ++u) ++squares[mulmod(u, u, m)];
  const u64 n = static_cast<u64>(form.n()) % m;
  u64 total = 0;
  for (u64 v = 0; v < m; ++v) {
    const u64 t = mulmod(n, mulmod(v, v, m), m);
    total += squares[t == 0 ? 0 : m - t];
  }
  return total;
}

u64 rhoPrimePower(const FormParameter& form, u64 p, unsigned alpha) {
  if (alpha == 0) return 1;
  if (!isGood(form, p)) return rhoByEnumeration(form, ipow(p, alpha));
  const u64 pa = ipow(p, alpha);
  const u64 phi = pa - pa / p;
  const u64 r0 = static_cast<u64>(1 + form.chi(static_cast<i64>(p)));
  if (alpha % 2 == 0) return (alpha / 2) * phi * r0 + pa;
  return ((alpha + 1) / 2) * phi * r0 + pa / p;
}

u64 rhoFull(const FormParameter& form, const arith::FactoredInteger& d) {
  u64 out = 1;
  for (const auto& pp : d.factors()) {
    out *= rhoPrimePower(form, static_cast<u64>(pp.prime), pp.exponent);
  }
  return out;
}

u64 rhoFull(const FormParameter& form, u64 d) {
  if (d == 0) throw DomainError("rhoFull needs d >= 1");
  return rhoFull(form, arith::factor(d));
}

u64 convolutionIdentity(const FormParameter& form, u64 k) {
  if (k == 0) throw DomainError("convolutionIdentity needs k >= 1");
  const auto fk = arith::factor(k);
  u64 total = 0;
  for (u64 b : arith::divisors(fk)) {
    if (k % (b * b) != 0) continue;
    const u64 k1 = k / (b * b);
    for (u64 a : arith::divisors(arith::factor(k1))) {
      if (arith::mobius(a) == 0) continue;
      const u64 d = k1 / a;
      if (gcd(a, d) != 1) continue;
      const auto fd = arith::factor(d);
      total += b * b * rho0(form, fd) * static_cast<u64>(arith::eulerPhi(fd));
    }
  }
  return total;
}

u64 repCount(const FormParameter& form, u64 k) {
  const u64 n = static_cast<u64>(form.n());
  u64 count = 0;
  for (u64 m = 0; n * m * m <= k; ++m) {
    if (isSquare(k - n * m * m)) ++count;
  }
  return count;
}

bool isExceptional(const FormParameter& form, u64 k) {
  const u64 n = static_cast<u64>(form.n());
  return isSquare(k) || (k % n == 0 && isSquare(k / n));
}

i64 characterDivisorSum(const FormParameter& form, u64 n) {
  if (n == 0) throw DomainError("characterDivisorSum needs n >= 1");
  i64 s = 0;
  for (u64 d : arith::divisors(arith::factor(n))) s += form.chi(static_cast<i64>(d));
  return s;
}

u64 latticeRepresentations(const FormParameter& form, u64 n) {
  const u64 nn = static_cast<u64>(form.n());
  u64 count = 0;
  for (u64 j = 0; nn * j * j <= n; ++j) {
    u64 i = 0;
    if (!isSquare(n - nn * j * j, &i)) continue;
    count += (i == 0 ? 1 : 2) * (j == 0 ? 1 : 2);
  }
  return count;
}

u64 maximalOrderRepresentations(const FormParameter& form, u64 n) {
  const u64 nn = static_cast<u64>(form.n());
  const u64 target = 4 * n;
  u64 count = 0;
  for (u64 s = 0; nn * s * s <= target; ++s) {
    u64 r = 0;
    if (!isSquare(target - nn * s * s, &r)) continue;
    if ((r + s) % 2 != 0) continue;
    count += (r == 0 ? 1 : 2) * (s == 0 ? 1 : 2);
  }
  return count;
}

u64 latticeCountEllipse(const FormParameter& form, double x) {
  if (!(x >= 0.0)) throw DomainError("latticeCountEllipse needs X >= 0");
  const u64 bound = static_cast<u64>(std::floor(x));
  const u64 n = static_cast<u64>(form.n());
  u64 count = 0;
  for (u64 j = 0; n * j * j <= bound; ++j) {
    const u64 i = isqrt(bound - n * j * j);
    count += (2 * i + 1) * (j == 0 ? 1 : 2);
  }
  return count;
}

std::vector<double> gCoefficients(const FormParameter& form, u64 limit) {
  std::vector<double> g(limit + 1, 0.0);
  if (limit == 0) return g;
  const auto spf = arith::smallestPrimeFactors(static_cast<std::uint32_t>(limit));
  std::unordered_map<u64, std::vector<double>> local;
  g[1] = 1.0;
  for (u64 n = 2; n <= limit; ++n) {
    const u64 p = spf[n];
    u64 m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    auto it = local.find(p);
    if (it == local.end()) {
      unsigned kMax = 0;
      for (u64 q = p; q <= limit; q *= p) ++kMax;
      std::vector<u64> rp(kMax + 1);
      for (unsigned k = 0; k <= kMax; ++k) rp[k] = rhoPrimePower(form, p, k);
      const int chi = form.chi(static_cast<i64>(p));
      std::vector<double> vals(kMax + 1);
      double pk = 1.0;
      for (unsigned k = 0; k <= kMax; ++k) {
        vals[k] = static_cast<double>(gNumerator(rp, p, chi, k)) / pk;
        pk *= static_cast<double>(p);
      }
      it = local.emplace(p, std::move(vals)).first;
    }
    g[n] = it->second[e] * g[m];
  }
  return g;
}

double localFactorG(const FormParameter& form, u64 p, double s) {
  if (!(s > 0.0)) throw DomainError("localFactorG needs s > 0");
  const int chi = form.chi(static_cast<i64>(p));
  const double ps = std::pow(static_cast<double>(p), -s);
  if (isGood(form, p)) return 1.0 - chi * ps / static_cast<double>(p);
  // F_p(s) = sum_a rho(p^a) p^{-a(1+s)}; rho(p^{a+2}) = p^2 rho(p^a) once stable.
  std::vector<u64> rp = {1};
  for (u64 m = p; m <= kEnumerationCap; m *= p) rp.push_back(rhoByEnumeration(form, m));
  const std::size_t top = rp.size() - 1;
  if (top < 3 || rp[top] != p * p * rp[top - 2] || rp[top - 1] != p * p * rp[top - 3]) {
    throw DomainError("local series at " + std::to_string(p) + " did not stabilise");
  }
  const double x = std::pow(static_cast<double>(p), -(1.0 + s));
  CompensatedSum f;
  std::vector<double> terms(rp.size());
  double xa = 1.0;
  for (std::size_t a = 0; a <= top; ++a) {
    terms[a] = static_cast<double>(rp[a]) * xa;
    f.add(terms[a]);
    xa *= x;
  }
  const double q = static_cast<double>(p) * static_cast<double>(p) * x * x;
  f.add((terms[top - 1] + terms[top]) * q / (1.0 - q));
  return f.value() * (1.0 - ps) * (1.0 - chi * ps);
}

RhoTable::RhoTable(const FormParameter& form, u64 limit) : form_(form), limit_(limit) {
  if (limit == 0) throw DomainError("RhoTable needs limit >= 1");
  if (limit > (u64{1} << 32) - 2) throw DomainError("RhoTable limit too large");
  rho0_.assign(limit + 1, 0);
  rho_.assign(limit + 1, 0);
  prefix_.assign(limit + 1, 0);
  prefixOverD_.assign(limit + 1, 0.0);
  prefixOverD2_.assign(limit + 1, 0.0);
  const auto spf = arith::smallestPrimeFactors(static_cast<std::uint32_t>(limit));
  // (p, e) -> (rho0(p^e), rho(p^e)), filled on first use.
  std::unordered_map<u64, std::pair<u64, u64>> local;
  rho0_[1] = 1;
  rho_[1] = 1;
  CompensatedSum s1;
  CompensatedSum s2;
  prefix_[1] = 1;
  s1.add(1.0);
  s2.add(1.0);
  prefixOverD_[1] = 1.0;
  prefixOverD2_[1] = 1.0;
  for (u64 n = 2; n <= limit; ++n) {
    const u64 p = spf[n];
    u64 m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const u64 key = p * 64 + e;
    auto it = local.find(key);
    if (it == local.end()) {
      const u64 pe = n / m;
      const arith::FactoredInteger fpe(pe, {{p, e}});
      it = local.emplace(key, std::make_pair(roots::rootCount(form, fpe),
                                             rhoPrimePower(form, p, e))).first;
    }
    rho0_[n] = static_cast<std::uint32_t>(it->second.first * rho0_[m]);
    rho_[n] = it->second.second * rho_[m];
    prefix_[n] = prefix_[n - 1] + rho_[n];
    const double dn = static_cast<double>(n);
    s1.add(static_cast<double>(rho_[n]) / dn);
    s2.add(static_cast<double>(rho_[n]) / (dn * dn));
    prefixOverD_[n] = s1.value();
    prefixOverD2_[n] = s2.value();
  }
}

void RhoTable::checkIndex(u64 y) const {
  if (y > limit_) {
    throw DomainError("index " + std::to_string(y) + " exceeds table limit " +
                      std::to_string(limit_));
  }
}

u64 RhoTable::rho0(u64 d) const {
  checkIndex(d);
  if (d == 0) throw DomainError("rho0 needs d >= 1");
  return rho0_[d];
}

u64 RhoTable::rho(u64 d) const {
  checkIndex(d);
  if (d == 0) throw DomainError("rho needs d >= 1");
  return rho_[d];
}

u64 RhoTable::partialRho(u64 y) const {
  checkIndex(y);
  return prefix_[y];
}

double RhoTable::partialRhoOverD(u64 y) const {
  checkIndex(y);
  return prefixOverD_[y];
}

double RhoTable::partialRhoOverD2(u64 y) const {
  checkIndex(y);
  return prefixOverD2_[y];
}

double RhoTable::errorFunction(double t, double a) const {
  if (!(t >= 0.0) || t > static_cast<double>(limit_)) {
    throw DomainError("errorFunction argument outside [0, limit]");
  }
  const u64 y = static_cast<u64>(std::floor(t));
  return static_cast<double>(prefix_[y]) - a * t * t;
}

PartialSums RhoTable::partialSums(u64 y, double a) const {
  checkIndex(y);
  if (y == 0) throw DomainError("partialSums needs y >= 1");
  const double yd = static_cast<double>(y);
  return {prefix_[y], prefixOverD_[y], prefixOverD2_[y],
          static_cast<double>(prefix_[y]) - a * yd * yd};
}

}  // namespace qfdiv::rho
