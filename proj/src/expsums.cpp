#include "expsums.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "parallel.hpp"
#include "roots.hpp"

namespace qfdiv::expsums {

GeometricSum geometricSumMagnitude(i64 h, u64 v, u64 d, u64 m) {
  if (d == 0 || m == 0) throw DomainError("geometric sum needs d, M >= 1");
  const u64 t = static_cast<u64>(mulmod(static_cast<u128>(modNonneg(h, d)), static_cast<u128>(v % d),
                                        static_cast<u128>(d)));
  const double md = static_cast<double>(m);
  if (t == 0) return {md, md};
  const u64 mt = static_cast<u64>(mulmod(static_cast<u128>(m % d), static_cast<u128>(t),
                                         static_cast<u128>(d)));
  const double dd = static_cast<double>(d);
  const double num = std::sin(std::numbers::pi * static_cast<double>(mt) / dd);
  const double den = std::sin(std::numbers::pi * static_cast<double>(t) / dd);
  const double dist = static_cast<double>(std::min(t, d - t)) / dd;
  return {std::abs(num / den), std::min(md, 0.5 / dist)};
}

SieveSumSample largeSieveSum(const FormParameter& form, u64 D, u64 H, u64 M, unsigned threads) {
  if (D == 0 || H == 0 || M == 0) throw DomainError("largeSieveSum needs D, H, M >= 1");
  std::vector<CompensatedSum> perD(D);
  parallelFor(D, threads, [&](std::size_t i) {
    const u64 d = D + 1 + i;
    const auto rs = roots::rootsByLifting(form, d);
    CompensatedSum acc;
    for (u64 v : rs.roots) {
      for (u64 h = 1; h <= H; ++h) {
        acc.add(geometricSumMagnitude(static_cast<i64>(h), v, d, M).magnitude /
                static_cast<double>(h));
      }
    }
    perD[i] = acc;
  });
  CompensatedSum total;
  for (const auto& c : perD) total.add(c.value());
  SieveSumSample out{D, H, M, total.value(), 0.0};
  const double dd = static_cast<double>(D);
  out.boundRatio = out.value / ((dd + static_cast<double>(M)) * std::sqrt(dd));
  return out;
}

u64 lengthFor(MRule rule, u64 D) {
  switch (rule) {
    case MRule::kEqualD: return D;
    case MRule::kSqrtD: return std::max<u64>(1, static_cast<u64>(isqrt(D)));
    case MRule::kSquareD: return D * D;
  }
  return D;
}

SieveStudy sieveBoundStudy(const FormParameter& form, const std::vector<u64>& grid, u64 H,
                           MRule rule, unsigned threads) {
  if (grid.empty()) throw DomainError("sieveBoundStudy needs a nonempty grid");
  SieveStudy study;
  for (u64 D : grid) {
    study.samples.push_back(largeSieveSum(form, D, H, lengthFor(rule, D), threads));
    study.maxRatio = std::max(study.maxRatio, study.samples.back().boundRatio);
  }
  for (std::size_t i = 1; i < study.samples.size(); ++i) {
    study.growth.push_back(study.samples[i].boundRatio / study.samples[i - 1].boundRatio);
  }
  return study;
}

}  // namespace qfdiv::expsums
