#pragma once

#include <stdexcept>
#include <string>

namespace qfdiv {

// Precondition violated by the caller (bad modulus, unsupported form, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a table or exact-arithmetic range.
class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace qfdiv
