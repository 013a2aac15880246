#pragma once

#include <cstdint>
#include <vector>

#include "jwa/intmath.hpp"

namespace jwa {

// A finite sequence of partial quotients q_1 ... q_len, every entry >= 1.
using QuotientPattern = std::vector<std::int64_t>;

// F_i with F_0 = 0, F_1 = F_2 = 1. Supported up to i = 90; beyond that the
// value no longer fits the 62-bit input bound and std::overflow_error is thrown.
std::int64_t fib(int i);

// m(k) = max{ i >= 0 | F_{i+1}^2 <= k }, the Fibonacci bound on the iteration
// count. Defined for every k >= 1; decided by exact integer comparison.
int m_of_k(std::int64_t k);

// Open interval (lo_num/lo_den, hi_num/hi_den) of admissible c for a given
// level p. For p even the bounds are (F_p/F_{p+1})k and (F_{p+1}/F_{p+2})k in
// that order; for p odd they are swapped. Membership tests cross-multiply;
// numerators carry a factor k and may exceed 64 bits.
struct IntervalSpec {
    std::int64_t k = 0;
    int p = 0;
    int128 lo_num = 0, hi_num = 0;
    std::int64_t lo_den = 1, hi_den = 1;

    bool contains(std::int64_t c) const;
    std::int64_t first_member() const;  // smallest integer > lo
    std::int64_t last_member() const;   // largest integer < hi
    std::int64_t member_count() const;
};

IntervalSpec interval_I(std::int64_t k, int p);

// All integers in interval_I(k, p) coprime to k, ascending.
std::vector<std::int64_t> members_J(std::int64_t k, int p);

// Continued-fraction quotients of num/den by plain Euclid. The output is
// canonical: when longer than one entry the last quotient is >= 2.
QuotientPattern cf_expansion(std::int64_t num, std::int64_t den);

// Length of the maximal all-ones prefix.
int ones_prefix_len(const QuotientPattern& pattern);

// Signed cofactor sequence d_0 ... d_len driven by the pattern:
// d_{-1} = 0, d_0 = 1, d_i = d_{i-2} - q_i * d_{i-1}.
// |d_i| is the continuant of (q_1 ... q_i); sign(d_i) = (-1)^i.
std::vector<std::int64_t> d_sequence(const QuotientPattern& pattern);

// All-ones pattern of the given length with the single entry at position p
// (1-based) replaced by 2.
QuotientPattern ones_with_two_at(int len, int p);

// |d_m| for the single-2-at-p pattern in closed form:
// F_{m-p+1} F_{p+2} + F_{m-p} F_p.
std::int64_t dm_closed_form(int m, int p);

// Minimal |d_m| under: a single quotient 2 / any quotient >= 3 / two quotients 2.
struct Lemma2Thresholds {
    std::int64_t single_two;  // F_{m+1} + F_{m-1}
    std::int64_t any_three;   // F_{m+2}
    std::int64_t two_twos;    // F_{m+2} + 2 F_{m-3}
};
Lemma2Thresholds lemma2_thresholds(int m);

}  // namespace jwa
