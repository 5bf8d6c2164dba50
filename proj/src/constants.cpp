#include "constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace qfdiv::constants {

namespace {

// B_2, B_4, ..., B_16.
constexpr std::array<long double, 8> kBernoulli = {
    1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6, -3617.0L / 510};

constexpr long double kShift = 20.0L;

constexpr double kPi = std::numbers::pi;

// Exponent in |E_N(t)| <= c t^{4/3} log^2 t, so E/t^3 decays like t^{-1-a}.
constexpr double kTailExponent = 2.0 / 3.0;

}  // namespace

double hurwitzZeta2(double a) {
  if (!(a > 0.0)) throw DomainError("hurwitzZeta2 needs a > 0");
  long double x = a;
  long double head = 0.0L;
  while (x < kShift) {
    head += 1.0L / (x * x);
    x += 1.0L;
  }
  // zeta(2, x) ~ 1/x + 1/(2x^2) + sum_j B_2j x^{-2j-1}.
  long double tail = 1.0L / x + 0.5L / (x * x);
  long double pw = 1.0L / (x * x * x);
  const long double inv2 = 1.0L / (x * x);
  for (long double b : kBernoulli) {
    tail += b * pw;
    pw *= inv2;
  }
  return static_cast<double>(head + tail);
}

double digamma(double xIn) {
  if (!(xIn > 0.0)) throw DomainError("digamma needs x > 0");
  long double x = xIn;
  long double head = 0.0L;
  while (x < kShift) {
    head -= 1.0L / x;
    x += 1.0L;
  }
  // psi(x) ~ log x - 1/(2x) - sum_j B_2j / (2j x^2j).
  long double tail = std::log(x) - 0.5L / x;
  const long double inv2 = 1.0L / (x * x);
  long double pw = inv2;
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    tail -= kBernoulli[j] / (2.0L * static_cast<long double>(j + 1)) * pw;
    pw *= inv2;
  }
  return static_cast<double>(head + tail);
}

double lValue(const FormParameter& form, int s) {
  if (s != 1 && s != 2) throw DomainError("lValue supports s in {1, 2}");
  const u64 q = form.conductor();
  const double qd = static_cast<double>(q);
  CompensatedSum acc;
  for (u64 a = 1; a < q; ++a) {
    const int c = form.chi(static_cast<i64>(a));
    if (c == 0) continue;
    const double t = static_cast<double>(a) / qd;
    // sum chi(a) = 0 turns the divergent s = 1 Hurwitz sum into -sum chi(a) psi(a/q).
    acc.add(s == 1 ? -c * digamma(t) : c * hurwitzZeta2(t));
  }
  return s == 1 ? acc.value() / qd : acc.value() / (qd * qd);
}

double classNumberL1(const FormParameter& form) {
  const double w = static_cast<double>(form.unitsCount());
  return 2.0 * kPi / (w * std::sqrt(static_cast<double>(form.conductor())));
}

Interval gEuler(const FormParameter& form, int s, u64 cutoff) {
  if (s != 1 && s != 2) throw DomainError("gEuler supports s in {1, 2}");
  if (cutoff < 2) throw DomainError("gEuler needs cutoff >= 2");
  CompensatedSum logSum;
  for (u64 p : arith::primesBelow(cutoff + 1)) {
    logSum.add(std::log(rho::localFactorG(form, p, static_cast<double>(s))));
  }
  const double value = std::exp(logSum.value());
  const double pc = static_cast<double>(cutoff);
  const double tail = s == 2 ? 1.0 / (pc * pc) : 1.01 / pc;
  return {value, value * std::expm1(tail)};
}

double gResidue(const FormParameter& form) {
  double g = 1.0 / lValue(form, 2);
  const auto bad = arith::factor(2 * static_cast<u64>(form.n()));
  for (const auto& pp : bad.factors()) {
    const u64 p = static_cast<u64>(pp.prime);
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    g *= rho::localFactorG(form, p, 1.0) / (1.0 - form.chi(static_cast<i64>(p)) / p2);
  }
  return g;
}

double empiricalErrorConstant(const rho::RhoTable& table, double a, u64 yMax) {
  if (yMax > table.limit()) throw DomainError("empiricalErrorConstant beyond table limit");
  double best = 0.0;
  for (u64 y = 3; y <= yMax; ++y) {
    const double yd = static_cast<double>(y);
    const double scale = std::pow(yd, 4.0 / 3.0) * std::log(yd) * std::log(yd);
    const double main = a * yd * yd;
    // E jumps up at integers: the left limit uses the prefix sum at y - 1.
    const double at = static_cast<double>(table.partialRho(y)) - main;
    const double left = static_cast<double>(table.partialRho(y - 1)) - main;
    best = std::max({best, std::abs(at) / scale, std::abs(left) / scale});
  }
  return best;
}

double eTailBound(double c, double t) {
  const double l = std::log(t);
  const double a = kTailExponent;
  return c * std::pow(t, -a) * (l * l / a + 2.0 * l / (a * a) + 2.0 / (a * a * a));
}

Interval eIntegral(const rho::RhoTable& table, u64 cutoff, double a, double c) {
  if (cutoff < 1) throw DomainError("eIntegral needs cutoff >= 1");
  if (cutoff > table.limit()) throw DomainError("eIntegral cutoff beyond table limit");
  // On [d, d+1] the integrand is (S_d - A t^2)/t^3 with antiderivative
  // -S_d/(2t^2) - A log t. Summed by parts this is
  // 1/2 sum_{n<T} rho(n)/n^2 - S_{T-1}/(2T^2) - A log T.
  Interval out;
  if (cutoff > 1) {
    const double t = static_cast<double>(cutoff);
    out.value = 0.5 * table.partialRhoOverD2(cutoff - 1) -
                static_cast<double>(table.partialRho(cutoff - 1)) / (2.0 * t * t) - a * std::log(t);
  }
  const double t = static_cast<double>(cutoff);
  if (cutoff >= 3) {
    out.halfwidth = eTailBound(c, t);
  } else {
    // The envelope vanishes at t = 1; on [T, 3] use |E| <= max(S_2, 9A).
    const double sup = std::max(static_cast<double>(table.partialRho(std::min<u64>(2, table.limit()))), 9.0 * a);
    out.halfwidth = sup * (0.5 / (t * t) - 0.5 / 9.0) + eTailBound(c, 3.0);
  }
  return out;
}

double boxedEllipseArea(int n, double c) {
  if (c <= 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double rn = std::sqrt(nd);
  const double rc = std::sqrt(c);
  // int_0^a sqrt(c - N t^2) dt with z = sqrt(N) a.
  auto strip = [&](double a) {
    const double z = std::min(rc, rn * a);
    return (z * std::sqrt(std::max(0.0, c - z * z)) / 2.0 + c / 2.0 * std::asin(z / rc)) / rn;
  };
  const double aEnd = std::min(1.0, rc / rn);
  // For a < sqrt((c-1)/N) the column is clipped at b = 1.
  const double aClip = c > 1.0 ? std::min(aEnd, std::sqrt((c - 1.0) / nd)) : 0.0;
  return aClip + strip(aEnd) - strip(aClip);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  // Halving stops at 1e-15 so roundoff cannot force a full tree.
  const double sub = std::max(tol / 2.0, 1e-15);
  return simpson(f, a, m, fa, flm, fm, left, sub, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, sub, depth - 1);
}

double adaptiveSimpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 40);
}

}  // namespace

double splitIntegral(int n, double lo, double hi) {
  if (lo < 0.0 || hi < lo) throw DomainError("splitIntegral needs 0 <= lo <= hi");
  const double nd = static_cast<double>(n);
  const double r1 = std::sqrt(1.0 + nd);
  // alpha(u) / u is the constant pi sqrt(1+N) / (4 sqrt N) while u sqrt(1+N) <= 1;
  // kinks sit at u sqrt(1+N) in {1, N}.
  const double flat = 1.0 / r1;
  double total = 0.0;
  if (lo < flat) total += (std::min(hi, flat) - lo) * std::numbers::pi * r1 / (4.0 * std::sqrt(nd));
  const auto f = [&](double u) { return boxedEllipseArea(n, u * r1) / u; };
  std::vector<double> cuts = {std::max(lo, flat)};
  for (double k : {nd / r1, r1}) {
    if (k > cuts.back() && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += adaptiveSimpson(f, cuts[i], cuts[i + 1], 1e-12);
  return total;
}

AsymptoticConstants theoremConstants(const FormParameter& form, u64 cutoff) {
  const rho::RhoTable table(form, std::max<u64>(cutoff, 1000));
  return theoremConstants(table, cutoff);
}

AsymptoticConstants theoremConstants(const rho::RhoTable& table, u64 cutoff) {
  const FormParameter& form = table.form();
  if (!form.supportsApproximation()) {
    throw DomainError("theorem constants need N in {1, 2, 67, 163}; " + form.describe());
  }
  AsymptoticConstants k;
  k.n = form.n();
  k.flagged = !form.supportsTheorem();
  k.cutoff = cutoff;
  k.l1 = lValue(form, 1);
  k.l2 = lValue(form, 2);
  k.g1 = gResidue(form);
  k.g2 = gEuler(form, 2);
  k.a = k.l1 * k.g1 / 2.0;
  k.aPrinted = k.l1 * k.g2.value / 2.0;
  k.errorConstant = 2.0 * empiricalErrorConstant(table, k.a);
  k.eIntegral = eIntegral(table, cutoff, k.a, k.errorConstant);
  k.c1 = 4.0 * k.a;

  const double n = static_cast<double>(k.n);
  const double rn = std::sqrt(n);
  const double rn1 = std::sqrt(n - 1.0);
  auto clampedAcos = [](double x) {
    if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12) throw DomainError("arccos argument out of range");
    return std::acos(std::clamp(x, -1.0, 1.0));
  };
  const double angles = n * clampedAcos(std::sqrt(1.0 - 1.0 / n)) + n * std::atan(1.0 / rn) +
                        std::atan(rn) - std::atan(rn1);
  k.qConstant = kPi * kPi / (8.0 * k.l2);
  k.tBracket = k.a / rn * (6.0 * rn - 3.0 * rn1 - 2.0 * angles);
  // Printed: C2 = 4 I - pi^2/(8 L2) + A/sqrt N (2 sqrt N (log(N+1) + 1) + 6 sqrt N - 3 sqrt(N-1))
  //   - 2A/sqrt N (N arccos sqrt(1 - 1/N) + N arctan N^{-1/2} + arctan N^{1/2} - arctan (N-1)^{1/2}).
  k.c2Printed.value = 4.0 * k.eIntegral.value - k.qConstant +
                      k.a / rn * (2.0 * rn * (std::log(n + 1.0) + 1.0) + 6.0 * rn - 3.0 * rn1) -
                      2.0 * k.a / rn * angles;
  k.c2Printed.halfwidth = 4.0 * k.eIntegral.halfwidth;

  const double r1 = std::sqrt(n + 1.0);
  k.rMain = 2.0 * k.eIntegral.value + k.a * (std::log(n + 1.0) + 1.0);
  k.qWideMain = kPi * k.a * rn / 2.0;
  k.tWideMain = 2.0 * k.a * splitIntegral(k.n, n / r1, r1);
  k.qMain = 2.0 * k.a * splitIntegral(k.n, 0.0, 1.0 / r1);
  k.tMain = 2.0 * k.a * splitIntegral(k.n, 1.0 / r1, r1);
  k.c2.value = 2.0 * k.rMain - k.qMain - k.tMain;
  k.c2.halfwidth = 4.0 * k.eIntegral.halfwidth;
  return k;
}

}  // namespace qfdiv::constants
