// Invariant suites shared by the acceptance runner and the CLI. Each check
// returns a verdict with a one-line detail; thresholds come from the caller.
#pragma once

#include <string>
#include <vector>

#include "form.hpp"

namespace qfdiv::verify {

struct Thresholds {
  // 1. engine equivalence
  u64 engineMaxX = 200;
  std::vector<u64> engineSpotX = {350, 500};
  // 3. root/representation bijection
  u64 bijectionDMax = 10000;
  u64 bijectionSevenDMax = 512;
  // 4. approximation
  u64 approxDMax = 100000;
  double c1Floor = 0.05;
  // 5. large sieve growth per doubling, M = D
  unsigned sieveMinExp = 6;
  unsigned sieveMaxExp = 14;
  unsigned sieveFromExp = 9;
  u64 sieveH = 16;
  double sieveGrowth = 1.4358729437462937;  // 2^0.2 * 1.25
  // 6. rho
  u64 rhoBruteDMax = 2000;
  u64 convolutionKMax = 10000;
  u64 dirichletNMax = 2000;
  double dirichletRelTol = 1e-9;
  // 7. E_N envelope and the partial-summation identity
  u64 envelopeCalibrateY = 1000;
  u64 envelopeYMax = 100000;
  double envelopeSafety = 2.0;
  std::vector<u64> identityY = {10000, 100000};
  u64 eIntegralCutoff = 400000;
  // 8. constants
  double l1Tol = 1e-10;
  std::vector<u64> c2Cutoffs = {100000, 400000};
  // 9. residuals for N = 2
  std::vector<u64> theoremGrid = {512, 1024, 2048, 4096};
  double residualDecrease = 2.0;
  double slopeMax = 1.9;
  // 10. identities
  u64 identityNMax = 10000;
  u64 ramanujanDMax = 500;
  double identityTol = 1e-8;
  int geometricSamples = 1000;
  u64 geometricMaxD = 10000;
  u64 geometricMaxM = 10000;
  // sums/lattice approximation: |approx - exact| <= C x
  double latticeC = 2.0;
};

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Suites parameterised by form; an empty list means the criterion's default forms.
CheckResult engineEquivalence(const std::vector<int>& forms, u64 maxX, const std::vector<u64>& spotX,
                              unsigned threads);
CheckResult anchors(unsigned threads);
// All moduli d <= dMax in a branch when coprimeOnly is false; else gcd(d, 2N) = 1 only.
CheckResult bijection(const std::vector<int>& forms, u64 dMax, bool coprimeOnly);
CheckResult approximation(const std::vector<int>& forms, u64 dMax, double c1Floor);
CheckResult sieveGrowth(const std::vector<int>& forms, const Thresholds& t, unsigned threads);
CheckResult rhoCertification(const std::vector<int>& forms, const Thresholds& t, unsigned threads);
CheckResult errorEnvelope(const std::vector<int>& forms, const Thresholds& t);
CheckResult constantsCheck(const std::vector<int>& forms, const Thresholds& t);
CheckResult theoremShadow(int n, const Thresholds& t, unsigned threads);
CheckResult identities(const std::vector<int>& forms, const Thresholds& t, u64 seed);
CheckResult latticeApproximation(const std::vector<int>& forms, u64 maxX, double c);

// Criterion k (1..10) with its default forms.
CheckResult criterion(int k, const Thresholds& t, unsigned threads, u64 seed);

// Suites the CLI accepts: bijection, approx, sieve, rho, envelope, constants,
// sums, theorem, identities, lattice, all.
std::vector<std::string> suiteNames();
std::vector<CheckResult> runSuite(const std::string& suite, const std::vector<int>& forms, u64 dMax,
                                  const Thresholds& t, unsigned threads, u64 seed);

// JSON object keyed by field name. Parsing starts from the defaults; unknown
// keys and mistyped values throw DomainError.
std::string thresholdsToJson(const Thresholds& t);
Thresholds thresholdsFromJson(const std::string& text);

// "PASS 3 bijection: detail (1.2 s)".
std::string formatLine(const CheckResult& r);

}  // namespace qfdiv::verify
