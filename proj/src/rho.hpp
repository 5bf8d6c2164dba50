// rho_0(d) = #{v mod d : v^2 + N = 0}, rho(d) = #{(u, v) mod d : u^2 + N v^2 = 0},
// representation and lattice counts, and the prefix sums behind E_N.
#pragma once

#include <vector>

#include "arith.hpp"
#include "form.hpp"

namespace qfdiv::rho {

u64 rho0(const FormParameter& form, const arith::FactoredInteger& d);
u64 rho0(const FormParameter& form, u64 d);

// Closed form at primes not dividing 2N; O(p^alpha) pair count otherwise.
u64 rhoPrimePower(const FormParameter& form, u64 p, unsigned alpha);
// Pair count mod m through a histogram of squares, O(m) time and memory.
u64 rhoByEnumeration(const FormParameter& form, u64 m);

u64 rhoFull(const FormParameter& form, const arith::FactoredInteger& d);
u64 rhoFull(const FormParameter& form, u64 d);

// sum over k = a b^2 d, a squarefree, gcd(a, d) = 1, of b^2 rho_0(d) phi(d).
u64 convolutionIdentity(const FormParameter& form, u64 k);

// #{(n, m) : n, m >= 0, n^2 + N m^2 = k}.
u64 repCount(const FormParameter& form, u64 k);
// k is a square or N times a square.
bool isExceptional(const FormParameter& form, u64 k);

// sum_{d | n} chi_N(d).
i64 characterDivisorSum(const FormParameter& form, u64 n);
// #{(i, j) in Z^2 : i^2 + N j^2 = n}.
u64 latticeRepresentations(const FormParameter& form, u64 n);
// #{(r, s) in Z^2 : r^2 + N s^2 = 4n, r = s (mod 2)}: norms from the maximal order.
u64 maximalOrderRepresentations(const FormParameter& form, u64 n);
// #{(i, j) in Z^2 : i^2 + N j^2 <= X}.
u64 latticeCountEllipse(const FormParameter& form, double x);

// Coefficients g(1..limit) of G_N(s), where
// sum rho(n) n^{-1-s} = zeta(s) L(s, chi_N) G_N(s).
std::vector<double> gCoefficients(const FormParameter& form, u64 limit);
// Local factor sum_k g(p^k) p^{-k s} at a prime p (good or bad), s > 0.
double localFactorG(const FormParameter& form, u64 p, double s);

struct PartialSums {
  u64 sumRho = 0;
  double sumRhoOverD = 0.0;
  double sumRhoOverD2 = 0.0;
  double error = 0.0;  // sumRho - A y^2
};

class RhoTable {
 public:
  RhoTable(const FormParameter& form, u64 limit);

  const FormParameter& form() const { return form_; }
  u64 limit() const { return limit_; }
  u64 rho0(u64 d) const;
  u64 rho(u64 d) const;
  // Prefix sums over d <= y; y = 0 gives 0.
  u64 partialRho(u64 y) const;
  double partialRhoOverD(u64 y) const;
  double partialRhoOverD2(u64 y) const;
  // E_N(t) = sum_{d <= t} rho(d) - A t^2 for real 0 < t <= limit.
  double errorFunction(double t, double a) const;
  PartialSums partialSums(u64 y, double a) const;

 private:
  void checkIndex(u64 y) const;

  FormParameter form_;
  u64 limit_;
  std::vector<std::uint32_t> rho0_;
  std::vector<u64> rho_;
  std::vector<u64> prefix_;
  std::vector<double> prefixOverD_;
  std::vector<double> prefixOverD2_;
};

}  // namespace qfdiv::rho
