#pragma once

#include <cstdint>
#include <vector>

#include "jwa/intmath.hpp"

namespace jwa {

// Output pair of the reduction: 0 < n, n^2 < k, 0 < |d|, d^2 < k, and
// n*y == d*x (mod k) for the producing inputs.
struct ReducedPair {
    std::int64_t n = 0;
    std::int64_t d = 0;
};

// Full run record of the reduction loop on input (k, c). Indices follow the
// recurrence convention i = -1, 0, 1, ..., t with
//   n_{-1} = k, n_0 = c, d_{-1} = 0, d_0 = 1,
//   q_{i+1} = floor(n_{i-1} / n_i),
//   n_{i+1} = n_{i-1} - q_{i+1} n_i,   d_{i+1} = d_{i-1} - q_{i+1} d_i.
// The loop runs while n_i^2 >= k (evaluated exactly in integers), so at exit
// n_t^2 < k <= n_{t-1}^2 whenever t >= 1.
struct JwaTrace {
    std::int64_t k = 0;
    std::int64_t c = 0;
    int t = 0;
    std::vector<std::int64_t> n;  // n[i+1] holds n_i, i = -1 .. t
    std::vector<std::int64_t> d;  // same layout
    std::vector<std::int64_t> q;  // q[i-1] holds q_i, i = 1 .. t

    std::int64_t n_at(int i) const { return n[static_cast<size_t>(i + 1)]; }
    std::int64_t d_at(int i) const { return d[static_cast<size_t>(i + 1)]; }
    std::int64_t q_at(int i) const { return q[static_cast<size_t>(i - 1)]; }
    ReducedPair final_pair() const { return {n_at(t), d_at(t)}; }
};

// Requires k in [2, 2^62], 0 < c < k, gcd(k, c) = 1.
JwaTrace jwa_trace(std::int64_t k, std::int64_t c);

// t(k, c): the number of loop iterations of jwa_trace.
int iteration_count(std::int64_t k, std::int64_t c);

// c := x/y mod k, then run the loop. The result satisfies
// n*y == d*x (mod k) with both n^2 and d^2 below k.
ReducedPair jwa_reduce(std::int64_t k, std::int64_t x, std::int64_t y);

// One k-ary reduction step (u, v) -> (|a*u + b*v| / k, min(u, v)) with
// (a, b) = (d, -n) taken from jwa_reduce(k, u, v); a*u + b*v == 0 (mod k)
// and a^2, b^2 < k. uprime = 0 is legal and signals a*u + b*v = 0.
struct KaryStep {
    std::int64_t uprime = 0;
    std::int64_t vprime = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
};
KaryStep kary_step(std::int64_t u, std::int64_t v, std::int64_t k);

// Pure predicate: does the pair satisfy the output contract for (k, x, y)?
bool verify_output(std::int64_t k, std::int64_t x, std::int64_t y, ReducedPair pair);

// Lean single-pass loop for bulk scans: iteration count plus gcd(k, c)
// (the Euclid remainders are simply continued to 0 after the exit test).
// No validation, no allocation. sqrt_floor must equal isqrt(k - 1), so that
// b > sqrt_floor  <=>  b^2 >= k.
struct FastCount {
    int t;
    std::int64_t g;
};
FastCount count_iterations_unchecked(std::int64_t k, std::int64_t c,
                                     std::int64_t sqrt_floor) noexcept;

}  // namespace jwa
