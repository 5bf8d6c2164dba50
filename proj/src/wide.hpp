// Wide-integer helpers. Exact paths in this library carry values up to 2^96,
// so everything modular is done in unsigned __int128.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace qfdiv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

// Double-and-add; only reached for moduli above 2^64.
inline u128 mulmod(u128 a, u128 b, u128 m) {
  if (m <= UINT64_MAX) {
    return mulmod(static_cast<u64>(a % m), static_cast<u64>(b % m),
                  static_cast<u64>(m));
  }
  a %= m;
  b %= m;
  u128 r = 0;
  while (b != 0) {
    if (b & 1) {
      r = (r >= m - a) ? r - (m - a) : r + a;
    }
    a = (a >= m - a) ? a - (m - a) : a + a;
    b >>= 1;
  }
  return r;
}

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline u128 powmod(u128 b, u128 e, u128 m) {
  u128 r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline u128 isqrt(u128 n) {
  if (n <= UINT64_MAX) return isqrt(static_cast<u64>(n));
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool isSquare(u64 n, u64* root = nullptr) {
  const u64 r = isqrt(n);
  if (root != nullptr) *root = r;
  return r * r == n;
}

inline u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 floorDiv(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 floorDiv(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Non-negative residue of a signed value.
inline u64 modNonneg(i128 a, u64 m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

std::string toString(u128 v);
std::string toString(i128 v);

}  // namespace qfdiv
