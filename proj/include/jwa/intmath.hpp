#pragma once

#include <cstdint>
#include <string>

namespace jwa {

using int128 = __int128;
using uint128 = unsigned __int128;

// All inputs are bounded by 2^62 so any product of two of them fits a signed
// 128-bit intermediate. No floating point is used in any decision.
inline constexpr std::int64_t kMaxInput = std::int64_t(1) << 62;

// floor(sqrt(n)); exact for all n >= 0 (pure integer Newton iteration).
std::int64_t isqrt(std::int64_t n);

// w in [1, k-1] with a*w == 1 (mod k). Requires k > 1 and gcd(a mod k, k) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t k);

// c in [1, k-1] with c*y == x (mod k). Requires gcd(k,x) = gcd(k,y) = 1.
std::int64_t mod_div(std::int64_t x, std::int64_t y, std::int64_t k);

// (a*b) mod k for 0 <= a, b < k.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t k);

// a reduced into [0, k-1], correct for negative a.
std::int64_t mod_norm(std::int64_t a, std::int64_t k);

std::string to_string_i128(int128 v);

}  // namespace jwa
