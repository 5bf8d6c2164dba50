#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

#include "approx.hpp"
#include "arith.hpp"
#include "constants.hpp"
#include "error.hpp"
#include "expsums.hpp"
#include "parallel.hpp"
#include "rho.hpp"
#include "roots.hpp"
#include "sums.hpp"

namespace qfdiv::verify {

namespace {

const std::vector<int> kTheoremForms = {2, 67, 163};
const std::vector<int> kApproxForms = {1, 2, 67, 163};
const std::vector<int> kAllForms(kClassNumberOne.begin(), kClassNumberOne.end());
const std::vector<int> kTrivialUnitForms = {2, 7, 11, 19, 43, 67, 163};

const std::vector<int>& orDefault(const std::vector<int>& forms, const std::vector<int>& fallback) {
  return forms.empty() ? fallback : forms;
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

CheckResult make(std::string id, std::string name) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  return r;
}

// O(d^2) pair count with precomputed squares.
u64 bruteRho(int n, u64 d) {
  std::vector<u64> a(d), b(d);
  for (u64 u = 0; u < d; ++u) {
    a[u] = u * u % d;
    b[u] = static_cast<u64>(n) % d * a[u] % d;
  }
  u64 count = 0;
  for (u64 u = 0; u < d; ++u) {
    for (u64 v = 0; v < d; ++v) {
      const u64 s = a[u] + b[v];
      count += (s == 0 || s == d);
    }
  }
  return count;
}

double directGeometric(i64 h, u64 v, u64 d, u64 m) {
  std::complex<double> acc = 0.0;
  const u64 t = modNonneg(static_cast<i128>(h) * static_cast<i128>(v), d);
  for (u64 n = 1; n <= m; ++n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((n % d) * t % d) /
                         static_cast<double>(d);
    acc += std::polar(1.0, angle);
  }
  return std::abs(acc);
}

bool coprimeTo2N(const FormParameter& f, u64 d) { return gcd(d, 2 * static_cast<u64>(f.n())) == 1; }

}  // namespace

CheckResult engineEquivalence(const std::vector<int>& formsIn, u64 maxX, const std::vector<u64>& spotX,
                              unsigned threads) {
  Timer timer;
  CheckResult r = make("1", "engine-equivalence");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  u64 compared = 0, mismatches = 0;
  std::string first;
  for (int n : forms) {
    const FormParameter f(n);
    const auto brute = sums::bruteForceSeries(f, maxX, threads);
    for (u64 x = 1; x <= maxX; ++x) {
      const u64 h = sums::hyperbolaS(f, x, threads).s;
      ++compared;
      if (h != brute[x - 1]) {
        ++mismatches;
        if (first.empty()) first = " first N=" + std::to_string(n) + " x=" + std::to_string(x);
      }
    }
  }
  // Spot checks at larger x for N = 2.
  const FormParameter two(2);
  for (u64 x : spotX) {
    const u64 b = sums::bruteForceS(two, x, threads);
    const u64 h = sums::hyperbolaS(two, x, threads).s;
    ++compared;
    if (b != h) {
      ++mismatches;
      if (first.empty()) first = " first N=2 x=" + std::to_string(x);
    }
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(compared) + " (N, x) pairs, x <= " + std::to_string(maxX) +
             " plus N=2 spot checks, mismatches=" + std::to_string(mismatches) + first;
  r.seconds = timer.seconds();
  return r;
}

CheckResult anchors(unsigned threads) {
  Timer timer;
  CheckResult r = make("2", "worked-anchors");
  const FormParameter two(2), big(163);
  const auto d = sums::hyperbolaS(two, 2, threads);
  const u64 b2 = sums::bruteForceS(two, 2);
  const u64 b163 = sums::bruteForceS(big, 1);
  const u64 h163 = sums::hyperbolaS(big, 1, threads).s;
  r.passed = d.r == 10 && d.q == 1 && d.t == 4 && d.s == 15 && d.threshold == 1 && b2 == 15 &&
             b163 == 6 && h163 == 6;
  r.detail = "S_2(2): (R,Q,T,S)=(" + std::to_string(d.r) + "," + std::to_string(d.q) + "," +
             std::to_string(d.t) + "," + std::to_string(d.s) + ") k0=" + std::to_string(d.threshold) +
             " brute=" + std::to_string(b2) + "; S_163(1): brute=" + std::to_string(b163) +
             " hyperbola=" + std::to_string(h163);
  r.seconds = timer.seconds();
  return r;
}

CheckResult bijection(const std::vector<int>& formsIn, u64 dMax, bool coprimeOnly) {
  Timer timer;
  CheckResult r = make("3", "root-representation-bijection");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  bool ok = true;
  std::ostringstream out;
  for (int n : forms) {
    const FormParameter f(n);
    if (!f.hasOnlyTrivialUnits()) {
      ok = false;
      out << "N=" << n << ": units beyond +-1, not checked; ";
      continue;
    }
    const auto rep = coprimeOnly ? roots::verifyBijection(f, dMax, coprimeTo2N) : roots::verifyBijection(f, dMax);
    ok = ok && rep.mismatches == 0;
    out << "N=" << n << " d<=" << dMax << (coprimeOnly ? " coprime" : " all branches") << ": checked "
        << rep.checked << ", mismatches " << rep.mismatches;
    if (n == 7 && !coprimeOnly) out << ", 8|d moduli " << rep.countByBranch[static_cast<int>(roots::Branch::kSevenEven)];
    if (rep.firstCounterexample) out << " first d=" << *rep.firstCounterexample << " " << rep.firstCounterexampleDetail;
    out << "; ";
  }
  r.passed = ok;
  r.detail = out.str();
  r.seconds = timer.seconds();
  return r;
}

CheckResult approximation(const std::vector<int>& formsIn, u64 dMax, double c1Floor) {
  Timer timer;
  CheckResult r = make("4", "rational-approximation");
  const auto& forms = orDefault(formsIn, kApproxForms);
  bool ok = true;
  std::ostringstream out;
  for (int n : forms) {
    const FormParameter f(n);
    if (!f.supportsApproximation()) {
      ok = false;
      out << "N=" << n << ": unsupported; ";
      continue;
    }
    const auto st = approx::denominatorStatistics(f, dMax);
    ok = ok && st.failures == 0 && st.c1 > c1Floor;
    out << "N=" << n << ": " << st.samples << " roots, failures " << st.failures << ", q/sqrt(d) in ["
        << fmt(st.c1) << ", " << fmt(st.c2) << "] (construction alone: c1 " << fmt(st.constructionC1)
        << ", failures " << st.constructionFailures << "); ";
  }
  r.passed = ok;
  r.detail = out.str() + "floor " + fmt(c1Floor);
  r.seconds = timer.seconds();
  return r;
}

CheckResult sieveGrowth(const std::vector<int>& formsIn, const Thresholds& t, unsigned threads) {
  Timer timer;
  CheckResult r = make("5", "large-sieve-growth");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  std::vector<u64> grid;
  for (unsigned e = t.sieveMinExp; e <= t.sieveMaxExp; ++e) grid.push_back(u64{1} << e);
  bool ok = true;
  std::ostringstream out;
  for (int n : forms) {
    const auto study = expsums::sieveBoundStudy(FormParameter(n), grid, t.sieveH, expsums::MRule::kEqualD, threads);
    double worst = 0.0;
    for (std::size_t i = 0; i < study.growth.size(); ++i) {
      if (grid[i] >= (u64{1} << t.sieveFromExp)) worst = std::max(worst, study.growth[i]);
    }
    ok = ok && worst <= t.sieveGrowth;
    out << "N=" << n << ": max growth " << fmt(worst) << ", max ratio " << fmt(study.maxRatio) << "; ";
  }
  r.passed = ok;
  r.detail = out.str() + "limit " + fmt(t.sieveGrowth) + " per doubling from D=2^" + std::to_string(t.sieveFromExp);
  r.seconds = timer.seconds();
  return r;
}

CheckResult rhoCertification(const std::vector<int>& formsIn, const Thresholds& t, unsigned threads) {
  Timer timer;
  CheckResult r = make("6", "rho-certification");
  const auto& forms = orDefault(formsIn, kAllForms);
  u64 bruteBad = 0, convBad = 0, dirBad = 0;
  double worstRel = 0.0;
  for (int n : forms) {
    const FormParameter f(n);
    std::vector<u64> bad(t.rhoBruteDMax, 0);
    parallelFor(t.rhoBruteDMax, threads, [&](std::size_t i) {
      const u64 d = i + 1;
      bad[i] = rho::rhoFull(f, d) != bruteRho(n, d);
    });
    for (u64 b : bad) bruteBad += b;
    for (u64 k = 1; k <= t.convolutionKMax; ++k) {
      if (rho::convolutionIdentity(f, k) != rho::rhoFull(f, k)) ++convBad;
    }
    const u64 limit = t.dirichletNMax;
    const auto g = rho::gCoefficients(f, limit);
    std::vector<double> chiG(limit + 1, 0.0), full(limit + 1, 0.0);
    for (u64 a = 1; a <= limit; ++a) {
      for (u64 b = 1; a * b <= limit; ++b) chiG[a * b] += f.chi(static_cast<i64>(a)) * g[b];
    }
    for (u64 a = 1; a <= limit; ++a) {
      for (u64 b = 1; a * b <= limit; ++b) full[a * b] += chiG[b];
    }
    for (u64 k = 1; k <= limit; ++k) {
      const double expect = static_cast<double>(rho::rhoFull(f, k)) / static_cast<double>(k);
      const double rel = std::abs(full[k] - expect) / expect;
      worstRel = std::max(worstRel, rel);
      if (rel > t.dirichletRelTol) ++dirBad;
    }
  }
  r.passed = bruteBad == 0 && convBad == 0 && dirBad == 0;
  r.detail = std::to_string(forms.size()) + " forms; rhoFull vs O(d^2) count d<=" + std::to_string(t.rhoBruteDMax) +
             ": " + std::to_string(bruteBad) + " mismatches; convolution k<=" + std::to_string(t.convolutionKMax) +
             ": " + std::to_string(convBad) + "; Dirichlet n<=" + std::to_string(t.dirichletNMax) + ": " +
             std::to_string(dirBad) + " above " + fmt(t.dirichletRelTol) + " (worst " + fmt(worstRel, 3) + ")";
  r.seconds = timer.seconds();
  return r;
}

CheckResult errorEnvelope(const std::vector<int>& formsIn, const Thresholds& t) {
  Timer timer;
  CheckResult r = make("7", "error-envelope");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  bool ok = true;
  std::ostringstream out;
  for (int n : forms) {
    const FormParameter f(n);
    const u64 limit = std::max({t.eIntegralCutoff, t.envelopeYMax, t.identityY.empty() ? 0 : t.identityY.back()});
    const rho::RhoTable table(f, limit);
    const auto k = constants::theoremConstants(table, t.eIntegralCutoff);
    const double cEmp = constants::empiricalErrorConstant(table, k.a, t.envelopeCalibrateY);
    const double c = t.envelopeSafety * cEmp;
    u64 violations = 0;
    double worst = 0.0;
    for (u64 y = 3; y <= t.envelopeYMax; ++y) {
      const double yd = static_cast<double>(y);
      const double env = std::pow(yd, 4.0 / 3.0) * std::log(yd) * std::log(yd);
      const double main = k.a * yd * yd;
      const double e = std::max(std::abs(static_cast<double>(table.partialRho(y)) - main),
                                std::abs(static_cast<double>(table.partialRho(y - 1)) - main));
      worst = std::max(worst, e / env);
      if (e > c * env) ++violations;
    }
    // sum_{d<=y} rho/d^2 - 2A log y = 2 I + A + E(y)/y^2 - 2 int_y^inf E/t^3.
    bool idOk = true;
    double prev = INFINITY;
    std::ostringstream ids;
    for (u64 y : t.identityY) {
      const double yd = static_cast<double>(y);
      const double diff = table.partialRhoOverD2(y) - 2.0 * k.a * std::log(yd) - (2.0 * k.eIntegral.value + k.a);
      const double tol = 2.0 * k.eIntegral.halfwidth + 2.0 * constants::eTailBound(c, yd) +
                         c * std::pow(yd, -2.0 / 3.0) * std::log(yd) * std::log(yd);
      const bool here = std::abs(diff) <= tol && std::abs(diff) < prev;
      idOk = idOk && here;
      prev = std::abs(diff);
      ids << " y=" << y << " diff " << fmt(diff, 3) << " tol " << fmt(tol, 3);
    }
    ok = ok && violations == 0 && idOk;
    out << "N=" << n << ": C=" << fmt(c) << " (2 x " << fmt(cEmp) << "), sup ratio to y=" << t.envelopeYMax << " "
        << fmt(worst) << ", violations " << violations << ";" << ids.str() << "; ";
  }
  r.passed = ok;
  r.detail = out.str();
  r.seconds = timer.seconds();
  return r;
}

CheckResult constantsCheck(const std::vector<int>& formsIn, const Thresholds& t) {
  Timer timer;
  CheckResult r = make("8", "constants");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  bool ok = true;
  std::ostringstream out;
  for (int n : forms) {
    const FormParameter f(n);
    const double l1 = constants::lValue(f, 1);
    const double closed = constants::classNumberL1(f);
    const bool lOk = std::abs(l1 - closed) <= t.l1Tol;
    const u64 top = *std::max_element(t.c2Cutoffs.begin(), t.c2Cutoffs.end());
    const rho::RhoTable table(f, top);
    std::vector<constants::AsymptoticConstants> ks;
    for (u64 cut : t.c2Cutoffs) ks.push_back(constants::theoremConstants(table, cut));
    bool cOk = true;
    for (std::size_t i = 1; i < ks.size(); ++i) {
      cOk = cOk && std::abs(ks[i].c2.value - ks[0].c2.value) <= ks[i].c2.halfwidth + ks[0].c2.halfwidth;
    }
    ok = ok && lOk && cOk;
    out << "N=" << n << ": |L1 - 2pi/(w sqrt|D|)| " << fmt(std::abs(l1 - closed), 2) << ", C1 " << fmt(ks[0].c1, 10)
        << ", C2";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out << " T=" << t.c2Cutoffs[i] << ":" << fmt(ks[i].c2.value, 8) << "+-" << fmt(ks[i].c2.halfwidth, 3);
    }
    out << "; ";
  }
  r.passed = ok;
  r.detail = out.str();
  r.seconds = timer.seconds();
  return r;
}

CheckResult theoremShadow(int n, const Thresholds& t, unsigned threads) {
  Timer timer;
  CheckResult r = make("9", "theorem-shadow");
  const FormParameter f(n);
  const auto k = constants::theoremConstants(f, t.eIntegralCutoff);
  const auto study = sums::residualStudy(f, t.theoremGrid, k, threads);
  std::ostringstream out;
  out << "N=" << n << " residual/x^2:";
  for (const auto& rec : study.records) out << " " << rec.x << ":" << fmt(rec.residualOverX2, 3);
  double decrease = 0.0;
  if (study.records.size() >= 2) {
    decrease = std::abs(study.records.front().residualOverX2) / std::abs(study.records.back().residualOverX2);
  }
  const double slope = study.slope.value_or(INFINITY);
  r.passed = decrease >= t.residualDecrease && slope <= t.slopeMax;
  out << "; decrease " << fmt(decrease) << " (need >= " << fmt(t.residualDecrease) << "), slope " << fmt(slope)
      << " (need <= " << fmt(t.slopeMax) << ")";
  // The printed C2 for comparison.
  out << "; with printed C2 " << fmt(k.c2Printed.value) << " residual/x^2:";
  for (const auto& rec : study.records) {
    const double x2 = static_cast<double>(rec.x) * static_cast<double>(rec.x);
    out << " " << fmt((rec.residual + (k.c2.value - k.c2Printed.value) * x2) / x2, 3);
  }
  r.detail = out.str();
  r.seconds = timer.seconds();
  return r;
}

CheckResult identities(const std::vector<int>& formsIn, const Thresholds& t, u64 seed) {
  Timer timer;
  CheckResult r = make("10", "identity-suite");
  const auto& forms = orDefault(formsIn, kTrivialUnitForms);
  std::ostringstream out;
  bool latOk = true, repOk = true, maxOk = true;
  out << "latcount as printed, n<=" << t.identityNMax << ":";
  for (int n : forms) {
    const FormParameter f(n);
    u64 latBad = 0, repBad = 0, maxBad = 0, firstLat = 0;
    for (u64 m = 1; m <= t.identityNMax; ++m) {
      const i64 s = rho::characterDivisorSum(f, m);
      if (static_cast<i64>(rho::latticeRepresentations(f, m)) != 2 * s) {
        if (latBad++ == 0) firstLat = m;
      }
      if (!rho::isExceptional(f, m) && 2 * static_cast<i64>(rho::repCount(f, m)) != s) ++repBad;
      const u64 reps = f.halfIntegral() ? rho::maximalOrderRepresentations(f, m) : rho::latticeRepresentations(f, m);
      if (static_cast<i64>(reps) != 2 * s) ++maxBad;
    }
    latOk = latOk && latBad == 0;
    repOk = repOk && repBad == 0;
    maxOk = maxOk && maxBad == 0;
    out << " N=" << n << " " << latBad << " failures";
    if (latBad > 0) out << " (first n=" << firstLat << ")";
    out << ", r_N " << repBad << ", maximal order " << maxBad << ";";
  }
  u64 ramBad = 0;
  for (u64 d = 1; d <= t.ramanujanDMax; ++d) {
    for (u64 w = 0; w < d; ++w) {
      double re = 0.0;
      for (u64 a = 1; a <= d; ++a) {
        if (gcd(a, d) != 1) continue;
        re += std::cos(2.0 * std::numbers::pi * static_cast<double>(a * w % d) / static_cast<double>(d));
      }
      if (std::abs(re - static_cast<double>(arith::ramanujanSum(static_cast<i64>(w), d))) > t.identityTol) ++ramBad;
    }
  }
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<u64> dd(1, t.geometricMaxD), mm(1, t.geometricMaxM);
  u64 geoBad = 0;
  for (int i = 0; i < t.geometricSamples; ++i) {
    const u64 d = dd(gen);
    const u64 m = mm(gen);
    const u64 v = gen() % d;
    const i64 h = static_cast<i64>(gen() % 50) + 1;
    const double closed = expsums::geometricSumMagnitude(h, v, d, m).magnitude;
    const double direct = directGeometric(h, v, d, m);
    if (std::abs(closed - direct) > t.identityTol * std::max(1.0, direct)) ++geoBad;
  }
  r.passed = latOk && repOk && ramBad == 0 && geoBad == 0;
  out << " Ramanujan d<=" << t.ramanujanDMax << ": " << ramBad << " failures; geometric " << t.geometricSamples
      << " samples: " << geoBad << " failures; maximal-order form of latcount "
      << (maxOk ? "holds" : "fails") << " for all listed N";
  r.detail = out.str();
  r.seconds = timer.seconds();
  return r;
}

CheckResult latticeApproximation(const std::vector<int>& formsIn, u64 maxX, double c) {
  Timer timer;
  CheckResult r = make("lattice", "lattice-approximation");
  const auto& forms = orDefault(formsIn, kTheoremForms);
  double worst = 0.0;
  u64 bad = 0, checked = 0;
  for (int n : forms) {
    const FormParameter f(n);
    const double r1 = std::sqrt(1.0 + n);
    for (u64 x = 1; x <= maxX; ++x) {
      const u64 lo = static_cast<u64>(std::floor(n * static_cast<double>(x) / r1));
      const u64 hi = static_cast<u64>(std::ceil(r1 * static_cast<double>(x)));
      for (u64 k = lo; k <= hi; ++k) {
        sums::ConstrainedLatticeCount cnt;
        try {
          cnt = sums::latticeCountConstrained(f, k, x);
        } catch (const DomainError&) {
          continue;
        }
        ++checked;
        const double err = std::abs(cnt.approximation - static_cast<double>(cnt.exact)) / static_cast<double>(x);
        worst = std::max(worst, err);
        if (err > c) ++bad;
      }
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(checked) + " (k, x) with x<=" + std::to_string(maxX) + ", max |approx-exact|/x " +
             fmt(worst) + " (limit " + fmt(c) + ")";
  r.seconds = timer.seconds();
  return r;
}

CheckResult criterion(int k, const Thresholds& t, unsigned threads, u64 seed) {
  switch (k) {
    case 1: return engineEquivalence({}, t.engineMaxX, t.engineSpotX, threads);
    case 2: return anchors(threads);
    case 3: {
      Timer timer;
      CheckResult a = bijection(kTheoremForms, t.bijectionDMax, true);
      const CheckResult b = bijection({7}, t.bijectionSevenDMax, false);
      a.passed = a.passed && b.passed;
      a.detail += b.detail;
      a.seconds = timer.seconds();
      return a;
    }
    case 4: return approximation({}, t.approxDMax, t.c1Floor);
    case 5: return sieveGrowth({}, t, threads);
    case 6: return rhoCertification({}, t, threads);
    case 7: return errorEnvelope({}, t);
    case 8: return constantsCheck({}, t);
    case 9: return theoremShadow(2, t, threads);
    case 10: return identities({}, t, seed);
    default: throw DomainError("criteria are numbered 1 to 10");
  }
}

std::vector<std::string> suiteNames() {
  return {"bijection", "approx", "sieve", "rho", "envelope", "constants", "sums", "theorem", "identities", "lattice", "all"};
}

std::vector<CheckResult> runSuite(const std::string& suite, const std::vector<int>& forms, u64 dMax,
                                  const Thresholds& t, unsigned threads, u64 seed) {
  const auto names = suiteNames();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw DomainError("unknown suite '" + suite + "'");
  }
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "sums") {
    out.push_back(engineEquivalence(forms, t.engineMaxX, t.engineSpotX, threads));
    out.push_back(anchors(threads));
  }
  if (all || suite == "bijection") {
    if (forms.empty()) {
      out.push_back(criterion(3, t, threads, seed));
    } else {
      out.push_back(bijection(forms, dMax ? dMax : t.bijectionDMax, false));
    }
  }
  if (all || suite == "approx") out.push_back(approximation(forms, dMax ? dMax : t.approxDMax, t.c1Floor));
  if (all || suite == "sieve") out.push_back(sieveGrowth(forms, t, threads));
  if (all || suite == "rho") out.push_back(rhoCertification(forms, t, threads));
  if (all || suite == "envelope") out.push_back(errorEnvelope(forms, t));
  if (all || suite == "constants") out.push_back(constantsCheck(forms, t));
  if (all || suite == "theorem") {
    for (int n : forms.empty() ? std::vector<int>{2} : forms) out.push_back(theoremShadow(n, t, threads));
  }
  if (all || suite == "identities") out.push_back(identities(forms, t, seed));
  if (all || suite == "lattice") out.push_back(latticeApproximation(forms, 300, t.latticeC));
  return out;
}

namespace {

template <typename Fn>
void forEachField(Fn&& fn, Thresholds& t) {
  fn("engineMaxX", t.engineMaxX);
  fn("engineSpotX", t.engineSpotX);
  fn("bijectionDMax", t.bijectionDMax);
  fn("bijectionSevenDMax", t.bijectionSevenDMax);
  fn("approxDMax", t.approxDMax);
  fn("c1Floor", t.c1Floor);
  fn("sieveMinExp", t.sieveMinExp);
  fn("sieveMaxExp", t.sieveMaxExp);
  fn("sieveFromExp", t.sieveFromExp);
  fn("sieveH", t.sieveH);
  fn("sieveGrowth", t.sieveGrowth);
  fn("rhoBruteDMax", t.rhoBruteDMax);
  fn("convolutionKMax", t.convolutionKMax);
  fn("dirichletNMax", t.dirichletNMax);
  fn("dirichletRelTol", t.dirichletRelTol);
  fn("envelopeCalibrateY", t.envelopeCalibrateY);
  fn("envelopeYMax", t.envelopeYMax);
  fn("envelopeSafety", t.envelopeSafety);
  fn("identityY", t.identityY);
  fn("eIntegralCutoff", t.eIntegralCutoff);
  fn("l1Tol", t.l1Tol);
  fn("c2Cutoffs", t.c2Cutoffs);
  fn("theoremGrid", t.theoremGrid);
  fn("residualDecrease", t.residualDecrease);
  fn("slopeMax", t.slopeMax);
  fn("identityNMax", t.identityNMax);
  fn("ramanujanDMax", t.ramanujanDMax);
  fn("identityTol", t.identityTol);
  fn("geometricSamples", t.geometricSamples);
  fn("geometricMaxD", t.geometricMaxD);
  fn("geometricMaxM", t.geometricMaxM);
  fn("latticeC", t.latticeC);
}

}  // namespace

std::string thresholdsToJson(const Thresholds& t) {
  nlohmann::ordered_json j;
  Thresholds copy = t;
  forEachField([&](const char* key, const auto& v) { j[key] = v; }, copy);
  return j.dump(2);
}

Thresholds thresholdsFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("thresholds: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("thresholds must be a JSON object");
  Thresholds t;
  std::size_t used = 0;
  forEachField(
      [&](const char* key, auto& v) {
        const auto it = j.find(key);
        if (it == j.end()) return;
        ++used;
        try {
          it->get_to(v);
        } catch (const nlohmann::json::exception&) {
          throw DomainError(std::string("thresholds: bad value for ") + key);
        }
      },
      t);
  if (used != j.size()) throw DomainError("thresholds: unknown key");
  return t;
}

std::string formatLine(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " " + r.id + " " + r.name + ": " + r.detail + " (" + secs + " s)";
}

}  // namespace qfdiv::verify
