#pragma once

#include <array>
#include <string>

#include "wide.hpp"

namespace qfdiv {

// The nine N for which Q(sqrt(-N)) has class number one.
inline constexpr std::array<int, 9> kClassNumberOne = {1, 2, 3, 7, 11, 19, 43, 67, 163};

// A validated form parameter N with the data of its quadratic character.
class FormParameter {
 public:
  // Throws DomainError for N outside the class-number-one set.
  explicit FormParameter(int n);

  int n() const { return n_; }
  // -4N for N in {1, 2}; -N for N = 3 (mod 4).
  i64 fundamentalDiscriminant() const { return discriminant_; }
  u64 conductor() const { return static_cast<u64>(-discriminant_); }
  int unitsCount() const;

  // Norm form (r^2 + N s^2)/4 with r = s (mod 2) rather than r^2 + N s^2.
  bool halfIntegral() const { return n_ % 4 == 3; }
  // The root/representation bijection assumes the only units are +-1.
  bool hasOnlyTrivialUnits() const { return n_ != 1 && n_ != 3; }
  // N in {1, 2, 67, 163}: forms with the well-approximation property.
  bool supportsApproximation() const;
  // N in {2, 67, 163}: forms covered by the main asymptotic.
  bool supportsTheorem() const;

  // chi_N(n) = (D / n), Kronecker symbol of the fundamental discriminant.
  int chi(i64 n) const;

  std::string describe() const;

 private:
  int n_;
  i64 discriminant_;
};

bool isClassNumberOne(int n);

}  // namespace qfdiv
