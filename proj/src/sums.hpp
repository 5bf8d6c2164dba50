// S_N(x) = sum_{1 <= m, n <= x} d(n^2 + N m^2): brute force, the exact
// hyperbola split S = 2R - Q - T, and residuals against the main term.
#pragma once

#include <optional>
#include <vector>

#include "constants.hpp"
#include "form.hpp"

namespace qfdiv::sums {

inline constexpr u64 kBruteForceMaxX = 2000;

// Per-pair divisor counts. Requires 1 <= x <= 2000.
u64 bruteForceS(const FormParameter& form, u64 x, unsigned threads = 1);
// S(1), ..., S(xMax) from one pass over the pairs (entry i holds S(i + 1)).
std::vector<u64> bruteForceSeries(const FormParameter& form, u64 xMax, unsigned threads = 1);

// #{1 <= m, n <= x : k | n^2 + N m^2}, through k = a b^2 d with a squarefree,
// gcd(a, d) = 1 and (m, n) = (a b m', a b n'), gcd(a m', d) = 1,
// n' = v m' (mod d) for a root v of v^2 + N = 0 (mod d).
u64 countPairsDivisibleBy(const FormParameter& form, u64 k, u64 x);
// The same count by scanning all x^2 pairs.
u64 countPairsByScan(const FormParameter& form, u64 k, u64 x);

struct DecomposedSum {
  int n = 0;
  u64 x = 0;
  u64 r = 0;
  u64 q = 0;
  u64 t = 0;
  u64 s = 0;          // 2R - Q - T
  u64 bound = 0;      // B = floor(sqrt(1+N) x)
  u64 threshold = 0;  // k0 = floor(x / sqrt(1+N)): k <= k0 forces V <= x^2
  // Split at floor(N x / sqrt(1+N)) with Q free of m, n <= x (diagnostic).
  bool hasWideVariant = false;
  u64 wideThreshold = 0;
  u64 qWide = 0;
  u64 tWide = 0;
  i64 sWide = 0;  // 2R - Qwide - Twide; differs from S when Q drops pairs with n > x
};

DecomposedSum hyperbolaS(const FormParameter& form, u64 x, unsigned threads = 0,
                         bool wideSplit = false);

// #{1 <= m, n <= x : n^2 + N m^2 <= k x sqrt(1+N)} by row scan, with the
// arccos/square-root area approximation beside it.
struct ConstrainedLatticeCount {
  u64 exact = 0;
  double approximation = 0.0;
};
// Requires N x / sqrt(1+N) < k <= sqrt(1+N) x.
ConstrainedLatticeCount latticeCountConstrained(const FormParameter& form, u64 k, u64 x);

struct ResidualRecord {
  u64 x = 0;
  u64 s = 0;
  double mainTerm = 0.0;  // C1 x^2 log x + C2 x^2
  double residual = 0.0;
  double residualOverX32 = 0.0;
  double residualOverX2 = 0.0;
  // Shadows of the pieces: R / (x^2 log x), Q / x^2, T / x^2 (wide split).
  double rOverX2LogX = 0.0;
  double qOverX2 = 0.0;
  double tOverX2 = 0.0;
  double qWideOverX2 = 0.0;
  double tWideOverX2 = 0.0;
};

struct ResidualStudy {
  std::vector<ResidualRecord> records;
  std::optional<double> slope;  // least squares of log|residual| on log x
};

// Geometric grid start, start*ratio, ... while <= stop.
std::vector<u64> geometricGrid(u64 start, u64 stop, double ratio);

ResidualStudy residualStudy(const FormParameter& form, const std::vector<u64>& grid,
                            const constants::AsymptoticConstants& k, unsigned threads = 0);

}  // namespace qfdiv::sums
