#include "approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "error.hpp"

namespace qfdiv::approx {

namespace {

i128 absI(i128 x) { return x < 0 ? -x : x; }

Fraction reduced(i128 a, i128 q) {
  if (q < 0) {
    a = -a;
    q = -q;
  }
  const u128 g = gcd(static_cast<u128>(absI(a)), static_cast<u128>(q));
  if (g > 1) {
    a /= static_cast<i128>(g);
    q /= static_cast<i128>(g);
  }
  return {static_cast<i64>(a), static_cast<u64>(q)};
}

const roots::PairedRoot& pairFor(const std::vector<roots::PairedRoot>& paired, u64 v) {
  for (const auto& pr : paired) {
    if (pr.root == v) return pr;
  }
  throw DomainError("no representation paired with root " + std::to_string(v));
}

// d odd and coprime to N.
Fraction constructCoprime(const FormParameter& form, u64 d, u64 v, ApproxBranch* branch) {
  *branch = ApproxBranch::kSDenominator;
  if (d == 1) return {0, 1};
  const auto paired = roots::pairedRoots(form, arith::factor(d));
  const auto& pr = pairFor(paired, v);
  const i128 r = pr.r;
  const i128 s = pr.s;
  const i128 n = form.n();
  if (prefersSDenominator(form, pr.r, pr.s)) {
    return reduced((static_cast<i128>(v) * s - r) / static_cast<i128>(d), s);
  }
  *branch = ApproxBranch::kRDenominator;
  return reduced((static_cast<i128>(v) * r + n * s) / static_cast<i128>(d), r);
}

// v / d = w / d1 with w = v / N the inverse of a root v1 mod d1 = d / N.
Fraction constructNDividesD(const FormParameter& form, u64 d, u64 v) {
  const u64 n = static_cast<u64>(form.n());
  const u64 d1 = d / n;
  const u64 w = v / n;
  if (d1 == 1) return {0, 1};
  const u64 v1 = arith::inverseMod(static_cast<i128>(w), d1);
  const auto paired = roots::pairedRoots(form, arith::factor(d1));
  const auto& pr = pairFor(paired, v1);
  const i128 r = pr.r;
  const i128 s = pr.s;
  // w = s / r (mod d1): w r - s = 0 and N w s + r = 0 (mod d1).
  if (prefersSDenominator(form, pr.s, pr.r)) {
    return reduced((static_cast<i128>(w) * r - s) / static_cast<i128>(d1), r);
  }
  const i128 ns = static_cast<i128>(n) * s;
  return reduced((static_cast<i128>(w) * ns + r) / static_cast<i128>(d1), ns);
}

Fraction constructOdd(const FormParameter& form, u64 d, u64 v, ApproxBranch* branch) {
  if (form.n() > 1 && d % static_cast<u64>(form.n()) == 0) {
    *branch = ApproxBranch::kNDividesD;
    return constructNDividesD(form, d, v);
  }
  return constructCoprime(form, d, v, branch);
}

}  // namespace

std::string branchName(ApproxBranch b) {
  switch (b) {
    case ApproxBranch::kSDenominator: return "sDenominator";
    case ApproxBranch::kRDenominator: return "rDenominator";
    case ApproxBranch::kNDividesD: return "nDividesD";
    case ApproxBranch::kEvenD: return "evenD";
  }
  return "unknown";
}

bool wellApproximates(u64 v, u64 d, i64 a, u64 q) {
  if (q == 0 || d == 0) return false;
  const i128 diff = absI(static_cast<i128>(v) * static_cast<i128>(q) -
                         static_cast<i128>(a) * static_cast<i128>(d));
  return diff * static_cast<i128>(q) <= static_cast<i128>(d);
}

double gammaOf(const FormParameter& form) { return 0.5 / std::sqrt(static_cast<double>(form.n())); }

bool prefersSDenominator(const FormParameter& form, i64 r, i64 s) {
  const i128 n = form.n();
  return 4 * n * static_cast<i128>(s) * s >= static_cast<i128>(r) * r;
}

Fraction nearestSqrtFraction(u64 d, u64 v) {
  const u64 qMax = static_cast<u64>(isqrt(static_cast<u128>(4) * d)) + 1;
  Fraction best{0, 0};
  u128 bestGap = std::numeric_limits<u128>::max();
  for (u64 q = 1; q <= qMax; ++q) {
    // Only floor(vq/d) and its successor can qualify when q >= 2; at q = 1
    // every candidate shares the gap, so the nearer one wins.
    const i128 num = static_cast<i128>(v) * q;
    const i64 lo = static_cast<i64>(floorDiv(num, static_cast<i128>(d)));
    std::optional<i64> pick;
    i128 pickErr = 0;
    for (i64 a : {lo, lo + 1}) {
      if (gcd(static_cast<u64>(a < 0 ? -a : a), q) != 1) continue;
      if (!wellApproximates(v, d, a, q)) continue;
      const i128 err = absI(num - static_cast<i128>(a) * d);
      if (!pick || err < pickErr) {
        pick = a;
        pickErr = err;
      }
    }
    if (!pick) continue;
    const i128 sq = static_cast<i128>(q) * q;
    const u128 gap = static_cast<u128>(absI(sq - static_cast<i128>(d)));
    if (gap < bestGap) {
      bestGap = gap;
      best = {*pick, q};
    }
  }
  if (best.q == 0) {
    throw DomainError("no approximation to " + std::to_string(v) + "/" + std::to_string(d));
  }
  return best;
}

Fraction constructionFraction(const FormParameter& form, u64 d, u64 v, ApproxBranch* branch) {
  unsigned l = 0;
  u64 dOdd = d;
  while (dOdd % 2 == 0) {
    dOdd /= 2;
    ++l;
  }
  // For N = 2 the even part is absorbed by N | d.
  if (l == 0 || form.n() == 2) return constructOdd(form, d, v, branch);
  const Fraction inner = constructOdd(form, dOdd, v % dOdd, branch);
  *branch = ApproxBranch::kEvenD;
  const i128 j = static_cast<i128>(v / dOdd);
  const i128 scale = static_cast<i128>(1) << l;
  return reduced(static_cast<i128>(inner.a) + j * inner.q, scale * inner.q);
}

RationalApprox approximate(const FormParameter& form, u64 d, u64 v) {
  if (!form.supportsApproximation()) {
    throw DomainError("approximation needs N in {1, 2, 67, 163}; " + form.describe());
  }
  if (d == 0 || v >= d) throw DomainError("root must lie in [0, d)");
  if ((static_cast<u128>(v) * v + static_cast<u128>(form.n())) % d != 0) {
    throw DomainError(std::to_string(v) + " is not a root mod " + std::to_string(d));
  }
  RationalApprox out;
  out.v = v;
  out.d = d;
  out.construction = constructionFraction(form, d, v, &out.branch);
  out.constructionPasses = wellApproximates(v, d, out.construction.a, out.construction.q);
  const Fraction best = nearestSqrtFraction(d, v);
  out.a = best.a;
  out.q = best.q;
  return out;
}

DenominatorStats denominatorStatistics(const FormParameter& form, u64 dMax) {
  DenominatorStats st;
  st.dMax = dMax;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  st.c1 = kInf;
  st.constructionC1 = kInf;
  for (u64 d = 1; d <= dMax; ++d) {
    const auto rs = roots::rootsByLifting(form, d);
    const double sd = std::sqrt(static_cast<double>(d));
    for (u64 v : rs.roots) {
      const RationalApprox ap = approximate(form, d, v);
      ++st.samples;
      if (!wellApproximates(v, d, ap.a, ap.q)) ++st.failures;
      if (!ap.constructionPasses) ++st.constructionFailures;
      const double ratio = static_cast<double>(ap.q) / sd;
      if (ratio < st.c1) {
        st.c1 = ratio;
        st.c1d = d;
        st.c1v = v;
      }
      if (ratio > st.c2) {
        st.c2 = ratio;
        st.c2d = d;
        st.c2v = v;
      }
      const double cr = static_cast<double>(ap.construction.q) / sd;
      if (cr < st.constructionC1) {
        st.constructionC1 = cr;
        st.constructionC1d = d;
        st.constructionC1v = v;
      }
      st.constructionC2 = std::max(st.constructionC2, cr);
    }
  }
  if (st.samples == 0) {
    st.c1 = 0.0;
    st.constructionC1 = 0.0;
  }
  return st;
}

CongruenceCheck checkApproximationCongruences(const FormParameter& form, u64 d, u64 v,
                                              i64 r, i64 s, i64 c) {
  CongruenceCheck out;
  const i128 n = form.n();
  const i128 dd = static_cast<i128>(d);
  const i128 vv = static_cast<i128>(v);
  auto inv = [](i128 x, i128 m) -> i128 {
    if (m == 1) return 0;
    return arith::inverseMod(x, static_cast<u64>(m));
  };
  if (s != 0) {
    const i128 as = absI(s);
    const i128 rt = inv(r, as);
    const i128 mod = dd * as;
    const i128 lhs = vv * s + static_cast<i128>(c) * rt * dd - r;
    out.sDenominator = lhs % mod == 0;
  }
  if (r != 0) {
    const i128 ar = absI(r);
    const i128 st = inv(s, ar);
    const i128 mod = dd * ar;
    const i128 lhs = vv * r - static_cast<i128>(c) * st * dd + n * s;
    out.rDenominator = lhs % mod == 0;
  }
  return out;
}

}  // namespace qfdiv::approx
