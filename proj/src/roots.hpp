// Solutions of v^2 + N = 0 (mod d) by two independent routes: Hensel/CRT
// lifting, and norm representations d = N(alpha) in the ring of integers of
// Q(sqrt(-N)) mapped through v = +-r/s (mod d).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "form.hpp"

namespace qfdiv::roots {

struct RootSet {
  u64 modulus = 1;
  std::vector<u64> roots;  // strictly increasing, each in [0, modulus)

  std::size_t size() const { return roots.size(); }
  bool operator==(const RootSet&) const = default;
};

enum class RepKind {
  kIntegral,      // norm = r^2 + N s^2
  kHalfIntegral,  // 4 * norm = r^2 + N s^2, r = s (mod 2)
};

struct NormRepresentation {
  i64 r = 0;  // > 0
  i64 s = 0;  // >= 0 (the sign of s is regenerated by the +- in v = +-r/s)
  RepKind kind = RepKind::kIntegral;
  u64 norm = 1;  // the integer represented: d, or 2d in the N = 7, 8 | d case

  bool operator==(const NormRepresentation&) const = default;
};

// Which case of the root/representation correspondence a modulus falls in.
enum class Branch {
  kCoprime,      // gcd(d, 2N) = 1
  kSevenEven,    // N = 7, 8 | d, 7 does not divide d
  kNDividesD,    // d = N d1 with gcd(d1, N) = 1
  kNotSolvable,  // N^2 | d, or 8 | d with N != 2, 7: no roots at all
  kOutside,      // 2 || d or 4 || d (N != 2, 7 | d excluded), N = 1 even d
};

std::string branchName(Branch b);
Branch classify(const FormParameter& form, u64 d);

RootSet rootsByLifting(const FormParameter& form, const arith::FactoredInteger& d);
RootSet rootsByLifting(const FormParameter& form, u64 d);

// Number of roots without materialising them (same local analysis).
u64 rootCount(const FormParameter& form, const arith::FactoredInteger& d);

// Brute-force O(d) oracle.
RootSet rootsByScan(const FormParameter& form, u64 d);

std::vector<NormRepresentation> representationsOf(const FormParameter& form,
                                                  const arith::FactoredInteger& d);
RootSet rootsFromRepresentations(const FormParameter& form,
                                 const arith::FactoredInteger& d);

// Root of v^2 + N = 0 (mod d) paired with a single representation under
// v = r / s (mod d); r and s are already halved when gcd(r, s) = 2.
struct PairedRoot {
  u64 root;
  i64 r;
  i64 s;
};
std::vector<PairedRoot> pairedRoots(const FormParameter& form,
                                    const arith::FactoredInteger& d);

struct BijectionReport {
  u64 dMax = 0;
  u64 checked = 0;
  u64 skipped = 0;  // moduli in kOutside
  u64 mismatches = 0;
  u64 totalRoots = 0;
  u64 countByBranch[5] = {0, 0, 0, 0, 0};
  std::optional<u64> firstCounterexample;
  std::string firstCounterexampleDetail;
};

// Finite-scale check: for each d <= dMax inside a branch, the lifted root set
// equals the image of the signed representations, and that image has no
// repeated element. Requires units +-1 (N not 1 or 3).
BijectionReport verifyBijection(const FormParameter& form, u64 dMax);
// Same, restricted to moduli satisfying the predicate.
BijectionReport verifyBijection(const FormParameter& form, u64 dMax,
                                bool (*accept)(const FormParameter&, u64));

}  // namespace qfdiv::roots
