#include "jwa/intmath.hpp"

#include <numeric>

#include "jwa/errors.hpp"

namespace jwa {

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw invalid_input("isqrt: negative argument");
    if (n < 2) return n;
    // Seed with a power of two >= sqrt(n), then Newton; the iteration is
    // strictly decreasing until it lands on floor(sqrt(n)).
    auto u = static_cast<std::uint64_t>(n);
    int bits = 64 - __builtin_clzll(u);
    std::uint64_t x = std::uint64_t(1) << ((bits + 1) / 2);
    for (;;) {
        std::uint64_t y = (x + u / x) / 2;
        if (y >= x) return static_cast<std::int64_t>(x);
        x = y;
    }
}

std::int64_t mod_norm(std::int64_t a, std::int64_t k) {
    std::int64_t r = a % k;
    return r < 0 ? r + k : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t k) {
    if (k <= 1 || k > kMaxInput) throw invalid_input("mod_inverse: modulus out of range");
    std::int64_t a0 = mod_norm(a, k);
    // Extended Euclid on (k, a0), tracking only the cofactor of a0.
    std::int64_t r0 = k, r1 = a0;
    std::int64_t s0 = 0, s1 = 1;  // s_i: coefficient of a0 in r_i
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw not_invertible("mod_inverse: gcd(a, k) != 1");
    return mod_norm(s0, k);
}

std::int64_t mod_div(std::int64_t x, std::int64_t y, std::int64_t k) {
    if (k <= 1 || k > kMaxInput) throw invalid_input("mod_div: modulus out of range");
    if (x <= 0 || y <= 0) throw invalid_input("mod_div: x, y must be positive");
    if (std::gcd(mod_norm(y, k), k) != 1) throw not_invertible("mod_div: gcd(y, k) != 1");
    if (std::gcd(mod_norm(x, k), k) != 1) throw invalid_input("mod_div: gcd(x, k) != 1");
    return mul_mod(mod_norm(x, k), mod_inverse(y, k), k);
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t k) {
    return static_cast<std::int64_t>(static_cast<int128>(a) * b % k);
}

std::string to_string_i128(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? static_cast<uint128>(-v) : static_cast<uint128>(v);
    char buf[48];
    int pos = 48;
    while (u != 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, buf + 48);
    return neg ? "-" + s : s;
}

}  // namespace jwa
