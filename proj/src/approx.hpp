// Rational approximations a/q to roots v/d with q of size sqrt(d), built from
// the norm representation attached to v.
#pragma once

#include <string>

#include "form.hpp"
#include "roots.hpp"

namespace qfdiv::approx {

enum class ApproxBranch {
  kSDenominator,  // q = |s|, error |r| / (d |s|)
  kRDenominator,  // q = r,   error N |s| / (d r)
  kNDividesD,     // v / d = w / d1 with w the inverse of a root mod d1
  kEvenD,         // d = 2^l d', lifted from an approximation of v' / d'
};

std::string branchName(ApproxBranch b);

struct Fraction {
  i64 a = 0;
  u64 q = 1;
};

// The returned fraction is the reduced a/q with q <= ceil(2 sqrt d) closest to
// sqrt(d) among those satisfying the inequality. The representation-based
// candidate is kept alongside with its own exact verdict.
struct RationalApprox {
  i64 a = 0;
  u64 q = 1;
  u64 v = 0;
  u64 d = 1;
  ApproxBranch branch = ApproxBranch::kSDenominator;
  Fraction construction;
  bool constructionPasses = false;
};

// |v/d - a/q| <= 1/q^2, decided by integer cross-multiplication.
bool wellApproximates(u64 v, u64 d, i64 a, u64 q);

// gamma(N) = 1 / (2 sqrt N); the s-denominator is chosen when |s| >= gamma |r|.
double gammaOf(const FormParameter& form);
bool prefersSDenominator(const FormParameter& form, i64 r, i64 s);

// Requires N in {1, 2, 67, 163} and v a root mod d; throws DomainError otherwise.
RationalApprox approximate(const FormParameter& form, u64 d, u64 v);

// Representation-based fraction alone (unverified).
Fraction constructionFraction(const FormParameter& form, u64 d, u64 v, ApproxBranch* branch);

// Reduced a/q with q <= ceil(2 sqrt d) satisfying the inequality and q closest
// to sqrt(d); ties go to the smaller q, then the nearest and smaller a.
Fraction nearestSqrtFraction(u64 d, u64 v);

struct DenominatorStats {
  u64 dMax = 0;
  u64 samples = 0;
  u64 failures = 0;  // produced fractions failing the inequality (must stay 0)
  double c1 = 0.0;   // min q / sqrt(d)
  double c2 = 0.0;   // max q / sqrt(d)
  u64 c1d = 0, c1v = 0, c2d = 0, c2v = 0;
  // Same statistics for the representation-based candidate.
  u64 constructionFailures = 0;
  double constructionC1 = 0.0;
  double constructionC2 = 0.0;
  u64 constructionC1d = 0, constructionC1v = 0;
};

// Scans every d <= dMax and every root v.
DenominatorStats denominatorStatistics(const FormParameter& form, u64 dMax);

// Clearing denominators in
//   v/d = -c r~ / s + r / (d s)  and  v/d = c s~ / r - N s / (d r)  (mod 1)
// where r^2 + N s^2 = c d, r r~ = 1 (mod s), s s~ = 1 (mod r).
struct CongruenceCheck {
  bool sDenominator = false;
  bool rDenominator = false;
};
CongruenceCheck checkApproximationCongruences(const FormParameter& form, u64 d, u64 v,
                                              i64 r, i64 s, i64 c);

}  // namespace qfdiv::approx
