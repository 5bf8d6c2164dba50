#include "form.hpp"

#include <algorithm>

#include "arith.hpp"
#include "error.hpp"

namespace qfdiv {

bool isClassNumberOne(int n) {
  return std::find(kClassNumberOne.begin(), kClassNumberOne.end(), n) !=
         kClassNumberOne.end();
}

FormParameter::FormParameter(int n) : n_(n), discriminant_(0) {
  if (!isClassNumberOne(n)) {
    throw DomainError("N = " + std::to_string(n) +
                      " is not in {1,2,3,7,11,19,43,67,163}");
  }
  discriminant_ = (n % 4 == 3) ? -static_cast<i64>(n) : -4 * static_cast<i64>(n);
}

int FormParameter::unitsCount() const {
  if (n_ == 1) return 4;
  if (n_ == 3) return 6;
  return 2;
}

bool FormParameter::supportsApproximation() const {
  return n_ == 1 || n_ == 2 || n_ == 67 || n_ == 163;
}

bool FormParameter::supportsTheorem() const {
  return n_ == 2 || n_ == 67 || n_ == 163;
}

int FormParameter::chi(i64 n) const { return arith::kronecker(discriminant_, n); }

std::string FormParameter::describe() const {
  return "N=" + std::to_string(n_) + " D=" + std::to_string(discriminant_);
}

}  // namespace qfdiv
