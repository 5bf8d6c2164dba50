#include "roots.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "error.hpp"

namespace qfdiv::roots {

namespace {

// Element (r + s sqrt(-N)) of Z[sqrt(-N)], or (r + s sqrt(-N)) / 2 of the
// maximal order when the form is half-integral.
struct Elem {
  i128 r;
  i128 s;
};

Elem multiply(const Elem& a, const Elem& b, i128 n, bool half) {
  i128 r = a.r * b.r - n * a.s * b.s;
  i128 s = a.r * b.s + a.s * b.r;
  if (half) {
    r /= 2;
    s /= 2;
  }
  return {r, s};
}

Elem one(bool half) { return half ? Elem{2, 0} : Elem{1, 0}; }

std::vector<Elem> units(const FormParameter& form) {
  const bool half = form.halfIntegral();
  std::vector<Elem> u = {one(half)};
  if (form.n() == 1) u.push_back({0, 1});
  if (form.n() == 3) {
    u.push_back({-1, 1});
    u.push_back({-1, -1});
  }
  return u;
}

u64 ipow(u64 p, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

bool isGoodPrime(const FormParameter& form, u64 p) {
  return p != 2 && static_cast<u64>(form.n()) % p != 0;
}

// Roots of v^2 + N mod p^e, increasing.
std::vector<u64> localRoots(const FormParameter& form, u64 p, unsigned e) {
  const i64 a = -static_cast<i64>(form.n());
  if (isGoodPrime(form, p)) {
    const auto sq = arith::sqrtMod(a, p);
    if (!sq) return {};
    std::vector<u64> out = {arith::henselLift(sq->first, a, p, e),
                            arith::henselLift(sq->second, a, p, e)};
    std::sort(out.begin(), out.end());
    return out;
  }
  const u128 n = static_cast<u128>(form.n());
  std::vector<u64> cur;
  for (u64 v = 0; v < p; ++v) {
    if ((static_cast<u128>(v) * v + n) % p == 0) cur.push_back(v);
  }
  u64 prev = p;
  for (unsigned j = 2; j <= e && !cur.empty(); ++j) {
    const u128 pj = static_cast<u128>(prev) * p;
    std::vector<u64> next;
    for (u64 v : cur) {
      for (u64 t = 0; t < p; ++t) {
        const u128 w = v + static_cast<u128>(t) * prev;
        if ((mulmod(w, w, pj) + n) % pj == 0) next.push_back(static_cast<u64>(w));
      }
    }
    std::sort(next.begin(), next.end());
    cur = std::move(next);
    prev = static_cast<u64>(pj);
  }
  return cur;
}

std::vector<u64> crtProduct(const std::vector<u64>& xs, u64 mx,
                            const std::vector<u64>& ys, u64 my) {
  const u64 inv = arith::inverseMod(static_cast<i128>(mx % my), my);
  const u128 mod = static_cast<u128>(mx) * my;
  std::vector<u64> out;
  out.reserve(xs.size() * ys.size());
  for (u64 x : xs) {
    for (u64 y : ys) {
      const u64 diff = modNonneg(static_cast<i128>(y) - static_cast<i128>(x % my), my);
      const u128 k = mulmod(static_cast<u128>(diff), static_cast<u128>(inv),
                            static_cast<u128>(my));
      out.push_back(static_cast<u64>((x + static_cast<u128>(mx) * k) % mod));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool primitiveAt(i128 r, i128 s, u64 p) {
  return r % static_cast<i128>(p) != 0 || s % static_cast<i128>(p) != 0;
}

// Generator of a prime-power ideal above p^e: r^2 + N s^2 = c m with
// c = 4 (half-integral) or 1, p not dividing both r and s.
std::optional<Elem> cornacchia(const FormParameter& form, u64 p, unsigned e, u64 t) {
  const u64 m = ipow(p, e);
  const u128 n = static_cast<u128>(form.n());
  if (form.halfIntegral()) {
    const u128 target = static_cast<u128>(4) * m;
    u128 a = 2 * static_cast<u128>(m);
    u128 b = (t % 2 == 1) ? t : static_cast<u128>(t) + m;
    const u128 bound = isqrt(target);
    while (b > bound) {
      const u128 c = a % b;
      a = b;
      b = c;
    }
    const u128 rem = target - b * b;
    if (rem % n != 0) return std::nullopt;
    const u128 q = rem / n;
    const u128 c = isqrt(q);
    if (c * c != q || (b - c) % 2 != 0) return std::nullopt;
    if (!primitiveAt(static_cast<i128>(b), static_cast<i128>(c), p)) return std::nullopt;
    return Elem{static_cast<i128>(b), static_cast<i128>(c)};
  }
  u128 a = m;
  u128 b = t;
  while (b * b >= m) {
    const u128 c = a % b;
    a = b;
    b = c;
  }
  const u128 rem = m - b * b;
  if (rem % n != 0) return std::nullopt;
  const u128 q = rem / n;
  const u128 c = isqrt(q);
  if (c * c != q) return std::nullopt;
  if (!primitiveAt(static_cast<i128>(b), static_cast<i128>(c), p)) return std::nullopt;
  return Elem{static_cast<i128>(b), static_cast<i128>(c)};
}

// Exhaustive search used only when both Cornacchia runs fail.
std::optional<Elem> searchGenerator(const FormParameter& form, u64 p, unsigned e) {
  const bool half = form.halfIntegral();
  const u128 target = static_cast<u128>(ipow(p, e)) * (half ? 4 : 1);
  const u128 n = static_cast<u128>(form.n());
  for (u128 s = 0; n * s * s <= target; ++s) {
    const u128 rem = target - n * s * s;
    const u128 r = isqrt(rem);
    if (r * r != rem || r == 0) continue;
    if (half && (r - s) % 2 != 0) continue;
    if (primitiveAt(static_cast<i128>(r), static_cast<i128>(s), p)) {
      return Elem{static_cast<i128>(r), static_cast<i128>(s)};
    }
  }
  return std::nullopt;
}

Elem primePowerGenerator(const FormParameter& form, u64 p, unsigned e) {
  if (p == 2) {
    // Only N = 7 splits 2; (1 + sqrt(-7)) / 2 generates a prime above it.
    Elem g = one(true);
    for (unsigned i = 0; i < e; ++i) g = multiply(g, Elem{1, 1}, 7, true);
    return g;
  }
  const std::vector<u64> rts = localRoots(form, p, e);
  if (rts.empty()) {
    throw DomainError("prime " + std::to_string(p) + " does not split");
  }
  for (u64 t : rts) {
    if (auto g = cornacchia(form, p, e, t)) return *g;
  }
  if (auto g = searchGenerator(form, p, e)) return *g;
  throw DomainError("no generator above " + std::to_string(p));
}

// All elements of norm d coprime to its conjugate, up to sign and conjugation.
std::vector<Elem> primitiveElements(const FormParameter& form,
                                    const arith::FactoredInteger& d) {
  const bool half = form.halfIntegral();
  const i128 n = form.n();
  std::vector<Elem> acc = {one(half)};
  for (const auto& pp : d.factors()) {
    if (localRoots(form, static_cast<u64>(pp.prime), pp.exponent).empty()) return {};
    const Elem g = primePowerGenerator(form, static_cast<u64>(pp.prime), pp.exponent);
    const Elem gbar = {g.r, -g.s};
    std::vector<Elem> next;
    next.reserve(acc.size() * 2);
    for (const Elem& x : acc) {
      next.push_back(multiply(x, g, n, half));
      next.push_back(multiply(x, gbar, n, half));
    }
    acc = std::move(next);
  }
  std::set<std::pair<i128, i128>> seen;
  std::vector<Elem> out;
  for (const Elem& x : acc) {
    for (const Elem& u : units(form)) {
      Elem y = multiply(x, u, n, half);
      if (y.r < 0) y = {-y.r, -y.s};
      if (y.r == 0) continue;
      if (y.s < 0) y.s = -y.s;
      if (seen.insert({y.r, y.s}).second) out.push_back(y);
    }
  }
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
    return a.r != b.r ? a.r < b.r : a.s < b.s;
  });
  return out;
}

std::vector<NormRepresentation> toReps(const std::vector<Elem>& elems, RepKind kind,
                                       u64 norm, i128 scale) {
  std::vector<NormRepresentation> out;
  out.reserve(elems.size());
  for (const Elem& e : elems) {
    out.push_back({static_cast<i64>(e.r * scale), static_cast<i64>(e.s * scale), kind,
                   norm});
  }
  return out;
}

arith::FactoredInteger divideOut(const arith::FactoredInteger& d, u64 p, unsigned k) {
  std::vector<arith::PrimePower> fs;
  for (const auto& pp : d.factors()) {
    if (pp.prime == p) {
      if (pp.exponent > k) fs.push_back({pp.prime, pp.exponent - k});
    } else {
      fs.push_back(pp);
    }
  }
  u128 v = d.value();
  for (unsigned i = 0; i < k; ++i) v /= p;
  return arith::FactoredInteger(v, std::move(fs));
}

arith::FactoredInteger multiplyBy(const arith::FactoredInteger& d, u64 p) {
  std::vector<arith::PrimePower> fs = d.factors();
  bool found = false;
  for (auto& pp : fs) {
    if (pp.prime == p) {
      ++pp.exponent;
      found = true;
    }
  }
  if (!found) {
    fs.push_back({p, 1});
    std::sort(fs.begin(), fs.end(),
              [](const arith::PrimePower& a, const arith::PrimePower& b) {
                return a.prime < b.prime;
              });
  }
  return arith::FactoredInteger(d.value() * p, std::move(fs));
}

// v = r / s mod d for both signs of s.
void pushPair(std::vector<PairedRoot>& out, i64 r, i64 s, u64 d) {
  if (d == 1) {
    out.push_back({0, r, s});
    return;
  }
  const u64 inv = arith::inverseMod(static_cast<i128>(s), d);
  const u64 v = static_cast<u64>(
      mulmod(static_cast<u128>(modNonneg(r, d)), static_cast<u128>(inv), static_cast<u128>(d)));
  out.push_back({v, r, s});
  if (s != 0) out.push_back({v == 0 ? 0 : d - v, r, -s});
}

}  // namespace

std::string branchName(Branch b) {
  switch (b) {
    case Branch::kCoprime: return "coprime";
    case Branch::kSevenEven: return "seven-even";
    case Branch::kNDividesD: return "n-divides-d";
    case Branch::kNotSolvable: return "not-solvable";
    case Branch::kOutside: return "outside";
  }
  return "unknown";
}

Branch classify(const FormParameter& form, u64 d) {
  if (d == 0) throw DomainError("modulus must be positive");
  const u64 n = static_cast<u64>(form.n());
  if (d == 1) return Branch::kCoprime;
  if (n == 1) {
    if (d % 2 == 1) return Branch::kCoprime;
    return d % 4 == 0 ? Branch::kNotSolvable : Branch::kOutside;
  }
  if (d % n == 0) {
    const u64 d1 = d / n;
    if (d1 % n == 0) return Branch::kNotSolvable;
    const Branch inner = classify(form, d1);
    if (inner == Branch::kCoprime || inner == Branch::kSevenEven) return Branch::kNDividesD;
    return inner;
  }
  if (d % 2 == 1) return Branch::kCoprime;
  if (d % 8 != 0) return Branch::kOutside;
  return n == 7 ? Branch::kSevenEven : Branch::kNotSolvable;
}

RootSet rootsByLifting(const FormParameter& form, const arith::FactoredInteger& d) {
  RootSet out;
  out.modulus = d.value64();
  std::vector<u64> acc = {0};
  u64 mod = 1;
  for (const auto& pp : d.factors()) {
    const u64 p = static_cast<u64>(pp.prime);
    const u64 pe = ipow(p, pp.exponent);
    const std::vector<u64> local = localRoots(form, p, pp.exponent);
    if (local.empty()) return out;
    acc = crtProduct(acc, mod, local, pe);
    mod *= pe;
  }
  out.roots = std::move(acc);
  return out;
}

RootSet rootsByLifting(const FormParameter& form, u64 d) {
  if (d == 0) throw DomainError("modulus must be positive");
  return rootsByLifting(form, arith::factor(d));
}

u64 rootCount(const FormParameter& form, const arith::FactoredInteger& d) {
  u64 count = 1;
  for (const auto& pp : d.factors()) {
    const u64 p = static_cast<u64>(pp.prime);
    const u64 c = isGoodPrime(form, p) ? static_cast<u64>(1 + form.chi(static_cast<i64>(p)))
                                       : localRoots(form, p, pp.exponent).size();
    if (c == 0) return 0;
    count *= c;
  }
  return count;
}

RootSet rootsByScan(const FormParameter& form, u64 d) {
  if (d == 0) throw DomainError("modulus must be positive");
  RootSet out;
  out.modulus = d;
  const u128 n = static_cast<u128>(form.n());
  for (u64 v = 0; v < d; ++v) {
    if ((static_cast<u128>(v) * v + n) % d == 0) out.roots.push_back(v);
  }
  return out;
}

std::vector<NormRepresentation> representationsOf(const FormParameter& form,
                                                  const arith::FactoredInteger& d) {
  const u64 dv = d.value64();
  const RepKind kind = form.halfIntegral() ? RepKind::kHalfIntegral : RepKind::kIntegral;
  switch (classify(form, dv)) {
    case Branch::kCoprime:
      return toReps(primitiveElements(form, d), kind, dv, 1);
    case Branch::kSevenEven: {
      // Norm-d elements 2x with N(x) = d / 4, then primitive norm-2d elements.
      auto out = toReps(primitiveElements(form, divideOut(d, 2, 2)), kind, dv, 2);
      auto wide = toReps(primitiveElements(form, multiplyBy(d, 2)), kind, 2 * dv, 1);
      out.insert(out.end(), wide.begin(), wide.end());
      return out;
    }
    case Branch::kNDividesD:
      return representationsOf(form, divideOut(d, static_cast<u64>(form.n()), 1));
    case Branch::kNotSolvable:
    case Branch::kOutside:
      return {};
  }
  return {};
}

std::vector<PairedRoot> pairedRoots(const FormParameter& form,
                                    const arith::FactoredInteger& d) {
  const u64 dv = d.value64();
  const Branch branch = classify(form, dv);
  std::vector<PairedRoot> out;
  if (branch == Branch::kNDividesD) {
    const u64 n = static_cast<u64>(form.n());
    const u64 d1 = dv / n;
    for (const PairedRoot& pr : pairedRoots(form, divideOut(d, n, 1))) {
      const u64 w = d1 == 1 ? 0 : arith::inverseMod(static_cast<i128>(pr.root), d1);
      out.push_back({n * w, pr.r, pr.s});
    }
    return out;
  }
  for (const NormRepresentation& rep : representationsOf(form, d)) {
    i64 r = rep.r;
    i64 s = rep.s;
    if (rep.kind == RepKind::kHalfIntegral && r % 2 == 0 && s % 2 == 0) {
      r /= 2;
      s /= 2;
    }
    pushPair(out, r, s, dv);
  }
  return out;
}

RootSet rootsFromRepresentations(const FormParameter& form,
                                 const arith::FactoredInteger& d) {
  RootSet out;
  out.modulus = d.value64();
  for (const PairedRoot& pr : pairedRoots(form, d)) out.roots.push_back(pr.root);
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

BijectionReport verifyBijection(const FormParameter& form, u64 dMax) {
  return verifyBijection(form, dMax, nullptr);
}

BijectionReport verifyBijection(const FormParameter& form, u64 dMax,
                                bool (*accept)(const FormParameter&, u64)) {
  if (!form.hasOnlyTrivialUnits()) {
    throw DomainError("bijection needs units +-1; " + form.describe());
  }
  BijectionReport rep;
  rep.dMax = dMax;
  for (u64 d = 1; d <= dMax; ++d) {
    const Branch branch = classify(form, d);
    if (branch == Branch::kOutside || (accept != nullptr && !accept(form, d))) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    ++rep.countByBranch[static_cast<int>(branch)];
    const auto fd = arith::factor(d);
    const RootSet lifted = rootsByLifting(form, fd);
    std::vector<u64> images;
    for (const PairedRoot& pr : pairedRoots(form, fd)) images.push_back(pr.root);
    std::sort(images.begin(), images.end());
    const bool distinct = std::adjacent_find(images.begin(), images.end()) == images.end();
    const bool equal = images == lifted.roots;
    rep.totalRoots += lifted.size();
    if (!distinct || !equal) {
      ++rep.mismatches;
      if (!rep.firstCounterexample) {
        rep.firstCounterexample = d;
        std::ostringstream os;
        os << "d=" << d << " branch=" << branchName(branch) << " lifted=" << lifted.size()
           << " images=" << images.size() << (distinct ? "" : " repeated-image");
        rep.firstCounterexampleDetail = os.str();
      }
    }
  }
  return rep;
}

}  // namespace qfdiv::roots
