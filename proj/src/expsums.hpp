// Large-sieve sums over roots of v^2 + N = 0 (mod d):
//   S(D, H, M; N) = sum_{D < d <= 2D} sum_v sum_{h <= H} (1/h) |sum_{n <= M} e(h n v / d)|.
#pragma once

#include <vector>

#include "form.hpp"

namespace qfdiv::expsums {

struct GeometricSum {
  double magnitude;  // |sum_{n=1}^{M} e(n theta)|, theta = h v / d
  double bound;      // min(M, 1 / (2 ||theta||))
};

GeometricSum geometricSumMagnitude(i64 h, u64 v, u64 d, u64 m);

struct SieveSumSample {
  u64 D = 0;
  u64 H = 0;
  u64 M = 0;
  double value = 0.0;
  double boundRatio = 0.0;  // value / ((D + M) sqrt D)
};

// Summation order is ascending d, then v, then h, so the value does not
// depend on the thread count.
SieveSumSample largeSieveSum(const FormParameter& form, u64 D, u64 H, u64 M,
                             unsigned threads = 1);

enum class MRule { kEqualD, kSqrtD, kSquareD };
u64 lengthFor(MRule rule, u64 D);

struct SieveStudy {
  std::vector<SieveSumSample> samples;
  double maxRatio = 0.0;
  std::vector<double> growth;  // ratio(D_{i+1}) / ratio(D_i)
};

SieveStudy sieveBoundStudy(const FormParameter& form, const std::vector<u64>& grid, u64 H,
                           MRule rule, unsigned threads = 1);

}  // namespace qfdiv::expsums
