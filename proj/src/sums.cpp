#include "sums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "arith.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "roots.hpp"

namespace qfdiv::sums {

namespace {

using RootLookup = std::function<const std::vector<u64>&(u64)>;

struct Split {
  u64 ab = 1;
  u64 d = 1;
};

// All k = a b^2 d with a squarefree and gcd(a, d) = 1, as (a b, d). Per prime
// p^e: a gets p^alpha, b gets p^beta, d gets p^{e - alpha - 2 beta}, and
// alpha = 1 forces d to miss p.
std::vector<Split> splits(const arith::FactoredInteger& k) {
  std::vector<Split> out = {{1, 1}};
  for (const auto& pp : k.factors()) {
    const u64 p = static_cast<u64>(pp.prime);
    const unsigned e = pp.exponent;
    std::vector<Split> next;
    for (const Split& s : out) {
      u64 pb = 1;  // p^beta
      for (unsigned beta = 0; 2 * beta <= e; ++beta, pb *= p) {
        u64 dpart = 1;
        for (unsigned i = 0; i < e - 2 * beta; ++i) dpart *= p;
        next.push_back({s.ab * pb, s.d * dpart});
        if (2 * beta + 1 == e) next.push_back({s.ab * pb * p, s.d});
      }
    }
    out = std::move(next);
  }
  return out;
}

// #{1 <= m <= mMax, 1 <= n <= nBound(m) : k | n^2 + N m^2}.
template <typename Bound>
u64 countDecomposed(u64 k, const RootLookup& roots, u64 mMax, Bound nBound) {
  u64 total = 0;
  for (const Split& sp : splits(arith::factor(k))) {
    const u64 g = sp.ab;
    const u64 d = sp.d;
    const auto& vs = roots(d);
    if (vs.empty()) continue;
    const u64 mTop = mMax / g;
    for (u64 m = 1; m <= mTop; ++m) {
      if (d > 1 && gcd(m, d) != 1) continue;
      const u64 nb = nBound(g * m) / g;
      if (nb == 0) continue;
      for (u64 v : vs) {
        // n' = r (mod d) with r taken in [1, d]; count of such n' in [1, nb].
        u64 r = static_cast<u64>((static_cast<u128>(v) * m) % d);
        if (r == 0) r = d;
        if (r <= nb) total += (nb - r) / d + 1;
      }
    }
  }
  return total;
}

// Largest V with V^2 <= k^2 x^2 (1+N), i.e. V <= k x sqrt(1+N).
u64 vMax(const FormParameter& form, u64 k, u64 x) {
  const u128 kx = static_cast<u128>(k) * x;
  return static_cast<u64>(isqrt(kx * kx * static_cast<u128>(1 + form.n())));
}

// n bound for n^2 <= vm - N m^2, 0 when no n >= 1 fits.
u64 ellipseRow(const FormParameter& form, u64 vm, u64 m) {
  const u128 nm2 = static_cast<u128>(form.n()) * m * m;
  if (nm2 + 1 > vm) return 0;
  return static_cast<u64>(isqrt(static_cast<u128>(vm) - nm2));
}

// Largest k with k^2 (1+N) <= c^2 x^2.
u64 scaledThreshold(const FormParameter& form, u64 c, u64 x) {
  const u128 cx = static_cast<u128>(c) * x;
  return static_cast<u64>(isqrt(cx * cx / static_cast<u128>(1 + form.n())));
}

u64 countWithinEllipse(const FormParameter& form, u64 k, u64 x, const RootLookup& roots,
                       bool boxed) {
  const u64 vm = vMax(form, k, x);
  const u64 mTop = static_cast<u64>(isqrt(static_cast<u128>(vm) / static_cast<u128>(form.n())));
  const u64 mMax = boxed ? std::min(x, mTop) : mTop;
  return countDecomposed(k, roots, mMax, [&](u64 m) {
    const u64 nb = ellipseRow(form, vm, m);
    return boxed ? std::min(nb, x) : nb;
  });
}

RootLookup freshRoots(const FormParameter& form) {
  auto store = std::make_shared<std::vector<u64>>();
  return [form, store](u64 d) -> const std::vector<u64>& {
    *store = roots::rootsByLifting(form, d).roots;
    return *store;
  };
}

}  // namespace

std::vector<u64> bruteForceSeries(const FormParameter& form, u64 xMax, unsigned threads) {
  if (xMax < 1 || xMax > kBruteForceMaxX) {
    throw DomainError("brute force needs 1 <= x <= " + std::to_string(kBruteForceMaxX));
  }
  const u64 n = static_cast<u64>(form.n());
  // S(x) - S(x-1) collects the pairs with max(m, n) = x.
  std::vector<u64> shell(xMax);
  parallelFor(xMax, threads, [&](std::size_t i) {
    const u64 x = i + 1;
    u64 acc = 0;
    for (u64 j = 1; j <= x; ++j) acc += arith::divisorCount(j * j + n * x * x);
    for (u64 j = 1; j < x; ++j) acc += arith::divisorCount(x * x + n * j * j);
    shell[i] = acc;
  });
  for (std::size_t i = 1; i < shell.size(); ++i) shell[i] += shell[i - 1];
  return shell;
}

u64 bruteForceS(const FormParameter& form, u64 x, unsigned threads) {
  return bruteForceSeries(form, x, threads).back();
}

u64 countPairsDivisibleBy(const FormParameter& form, u64 k, u64 x) {
  if (k == 0) throw DomainError("k must be positive");
  return countDecomposed(k, freshRoots(form), x, [x](u64) { return x; });
}

u64 countPairsByScan(const FormParameter& form, u64 k, u64 x) {
  if (k == 0) throw DomainError("k must be positive");
  u64 c = 0;
  for (u64 m = 1; m <= x; ++m) {
    for (u64 n = 1; n <= x; ++n) {
      if ((static_cast<u128>(n) * n + static_cast<u128>(form.n()) * m * m) % k == 0) ++c;
    }
  }
  return c;
}

DecomposedSum hyperbolaS(const FormParameter& form, u64 x, unsigned threads, bool wideSplit) {
  if (x < 1) throw DomainError("x must be positive");
  DecomposedSum out;
  out.n = form.n();
  out.x = x;
  const u64 n = static_cast<u64>(form.n());
  out.bound = scaledThreshold(form, 1 + n, x);  // sqrt((1+N)^2 x^2 / (1+N))
  out.threshold = scaledThreshold(form, 1, x);
  out.hasWideVariant = wideSplit;
  out.wideThreshold = std::min(out.bound, scaledThreshold(form, n, x));

  std::vector<std::vector<u64>> rootTable(out.bound + 1);
  parallelFor(out.bound, threads, [&](std::size_t i) {
    rootTable[i + 1] = roots::rootsByLifting(form, i + 1).roots;
  });
  const RootLookup lookup = [&rootTable](u64 d) -> const std::vector<u64>& { return rootTable[d]; };

  struct Slot {
    u64 r = 0, q = 0, t = 0, qp = 0, tp = 0;
  };
  std::vector<Slot> slots(out.bound);
  parallelFor(out.bound, threads, [&](std::size_t i) {
    const u64 k = i + 1;
    Slot& s = slots[i];
    s.r = countDecomposed(k, lookup, x, [x](u64) { return x; });
    const bool inQ = k <= out.threshold;
    // k <= k0 gives V <= x^2, so the box constraint is automatic there.
    const u64 boxed = countWithinEllipse(form, k, x, lookup, true);
    (inQ ? s.q : s.t) = boxed;
    if (wideSplit) {
      if (k <= out.wideThreshold) {
        s.qp = inQ ? boxed : countWithinEllipse(form, k, x, lookup, false);
      } else {
        s.tp = boxed;
      }
    }
  });
  for (const Slot& s : slots) {
    out.r += s.r;
    out.q += s.q;
    out.t += s.t;
    out.qWide += s.qp;
    out.tWide += s.tp;
  }
  out.s = 2 * out.r - out.q - out.t;
  if (wideSplit) {
    out.sWide = static_cast<i64>(2 * out.r) - static_cast<i64>(out.qWide) - static_cast<i64>(out.tWide);
  }
  return out;
}

ConstrainedLatticeCount latticeCountConstrained(const FormParameter& form, u64 k, u64 x) {
  const u128 n = static_cast<u128>(form.n());
  const u128 k2 = static_cast<u128>(k) * k;
  const u128 x2 = static_cast<u128>(x) * x;
  // N x / sqrt(1+N) < k <= sqrt(1+N) x, compared on squares.
  if (x < 1 || k2 * (1 + n) <= n * n * x2 || k2 > (1 + n) * x2) {
    throw DomainError("k outside (N x / sqrt(1+N), sqrt(1+N) x]");
  }
  ConstrainedLatticeCount out;
  const u64 vm = vMax(form, k, x);
  for (u64 m = 1; m <= x; ++m) out.exact += std::min(x, ellipseRow(form, vm, m));
  const double nd = static_cast<double>(form.n());
  const double kd = static_cast<double>(k);
  const double xd = static_cast<double>(x);
  const double r1 = std::sqrt(1.0 + nd);
  const double big = kd * xd * r1;
  out.approximation = big / (2.0 * std::sqrt(nd)) *
                          (std::acos(std::sqrt(std::max(0.0, 1.0 - xd / (kd * r1)))) -
                           std::acos(std::min(1.0, std::sqrt(nd * xd / (kd * r1))))) +
                      0.5 * xd * std::sqrt(std::max(0.0, (big - xd * xd) / nd)) +
                      0.5 * xd * std::sqrt(std::max(0.0, big - nd * xd * xd));
  return out;
}

std::vector<u64> geometricGrid(u64 start, u64 stop, double ratio) {
  if (start < 1 || stop < start || !(ratio > 1.0)) {
    throw DomainError("grid needs 1 <= start <= stop and ratio > 1");
  }
  std::vector<u64> grid;
  double v = static_cast<double>(start);
  while (true) {
    const u64 x = static_cast<u64>(std::llround(v));
    if (x > stop) break;
    if (grid.empty() || x > grid.back()) grid.push_back(x);
    v *= ratio;
  }
  return grid;
}

ResidualStudy residualStudy(const FormParameter& form, const std::vector<u64>& grid,
                            const constants::AsymptoticConstants& k, unsigned threads) {
  if (k.n != form.n()) throw DomainError("constants belong to a different N");
  ResidualStudy study;
  for (u64 x : grid) {
    const DecomposedSum ds = hyperbolaS(form, x, threads, true);
    ResidualRecord rec;
    const double xd = static_cast<double>(x);
    const double x2 = xd * xd;
    rec.x = x;
    rec.s = ds.s;
    rec.mainTerm = k.c1 * x2 * std::log(xd) + k.c2.value * x2;
    rec.residual = static_cast<double>(ds.s) - rec.mainTerm;
    rec.residualOverX32 = rec.residual / (xd * std::sqrt(xd));
    rec.residualOverX2 = rec.residual / x2;
    rec.rOverX2LogX = x > 1 ? static_cast<double>(ds.r) / (x2 * std::log(xd)) : 0.0;
    rec.qOverX2 = static_cast<double>(ds.q) / x2;
    rec.tOverX2 = static_cast<double>(ds.t) / x2;
    rec.qWideOverX2 = static_cast<double>(ds.qWide) / x2;
    rec.tWideOverX2 = static_cast<double>(ds.tWide) / x2;
    study.records.push_back(rec);
  }
  if (study.records.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(study.records.size());
    bool ok = true;
    for (const auto& r : study.records) {
      if (r.residual == 0.0) ok = false;
      const double lx = std::log(static_cast<double>(r.x));
      const double ly = std::log(std::abs(r.residual));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double den = m * sxx - sx * sx;
    if (ok && den > 0) study.slope = (m * sxy - sx * sy) / den;
  }
  return study;
}

}  // namespace qfdiv::sums
