// L(1, chi_N), L(2, chi_N), G_N(2), A_N, the E-integral and the coefficients
// C1, C2 of S_N(x) = C1 x^2 log x + C2 x^2 + (error).
#pragma once

#include "form.hpp"
#include "rho.hpp"

namespace qfdiv::constants {

// value +- halfwidth.
struct Interval {
  double value = 0.0;
  double halfwidth = 0.0;
};

// Euler-Maclaurin with 8 Bernoulli terms after shifting the argument past 20.
double hurwitzZeta2(double a);
double digamma(double x);

// L(s, chi_N) for s in {1, 2} from the periodic decomposition over a mod |D|.
double lValue(const FormParameter& form, int s);
// 2 pi h / (w sqrt |D|) with h = 1.
double classNumberL1(const FormParameter& form);

// prod_{p <= P} G_p(s) for s in {1, 2}, good factors 1 - chi(p) p^{-1-s}.
// |log of the tail| <= sum_{p > P} p^{-1-s}, bounded by P^-2 (s = 2) and 1.01/P (s = 1).
Interval gEuler(const FormParameter& form, int s, u64 cutoff = 100000);
// G_N(1) = prod_p G_p(1) = (1 / L(2, chi_N)) prod_{p | 2N} G_p(1) / (1 - chi(p) p^-2).
double gResidue(const FormParameter& form);

// sup |E_N(y)| / (y^{4/3} log^2 y) over 3 <= y <= yMax, left limits included.
double empiricalErrorConstant(const rho::RhoTable& table, double a, u64 yMax = 1000);

// Bound on int_T^inf c t^{4/3} log^2 t / t^3 dt.
double eTailBound(double c, double t);

// int_1^T E_N(t) / t^3 dt, integrated exactly piece by piece; the tail beyond
// T is bounded with |E_N(t)| <= c t^{4/3} log^2 t. Requires 1 <= T <= limit.
Interval eIntegral(const rho::RhoTable& table, u64 cutoff, double a, double c);

// Area of {0 <= a, b <= 1 : b^2 + N a^2 <= c}.
double boxedEllipseArea(int n, double c);
// int_lo^hi alpha(u) / u du with alpha(u) = boxedEllipseArea(N, u sqrt(1+N)).
// k | V has density rho(k)/k^2 and sum_{k<=t} rho(k)/k ~ 2A t, so the pairs
// counted for k in (lo x, hi x] with V <= k x sqrt(1+N) number ~ 2A x^2 times this.
double splitIntegral(int n, double lo, double hi);

struct AsymptoticConstants {
  int n = 0;
  double l1 = 0.0;
  double l2 = 0.0;
  double g1 = 0.0;  // G_N(1): sum rho(n) n^{-1-s} has residue L1 g1 at s = 1
  Interval g2;      // G_N(2), the printed choice, kept for comparison
  double a = 0.0;   // L1 g1 / 2
  double aPrinted = 0.0;  // L1 G_N(2) / 2
  Interval eIntegral;
  double errorConstant = 0.0;  // 2 x empirical constant used for the tail
  u64 cutoff = 0;
  // x^2 coefficients of the pieces of S = 2R - Q - T.
  double rMain = 0.0;      // 2 I + A (log(N+1) + 1), R / x^2 - 2A log x
  double qConstant = 0.0;  // printed: pi^2 / (8 L2)
  double tBracket = 0.0;   // printed: A / sqrt N (6 sqrt N - 3 sqrt(N-1) - 2 N arccos ...)
  double qWideMain = 0.0; // k <= N x / sqrt(1+N), no box: pi A sqrt N / 2
  double tWideMain = 0.0; // N x / sqrt(1+N) < k <= sqrt(1+N) x, boxed
  double qMain = 0.0;      // k <= x / sqrt(1+N) (box automatic): pi A / (2 sqrt N)
  double tMain = 0.0;      // x / sqrt(1+N) < k <= sqrt(1+N) x, boxed
  double c1 = 0.0;
  Interval c2;         // 2 rMain - qMain - tMain
  Interval c2Printed;  // the printed assembly with the printed Q and T terms
  bool flagged = false;  // N = 1: outside the theorem's set
};

// Requires N in {1, 2, 67, 163}.
AsymptoticConstants theoremConstants(const FormParameter& form, u64 cutoff = 100000);
AsymptoticConstants theoremConstants(const rho::RhoTable& table, u64 cutoff);

}  // namespace qfdiv::constants
