#include "jwa/trace.hpp"

#include <numeric>

#include "jwa/errors.hpp"

namespace jwa {

namespace {

void validate_kc(std::int64_t k, std::int64_t c) {
    if (k < 2 || k > kMaxInput) throw invalid_input("jwa: k out of range");
    if (c <= 0 || c >= k) throw invalid_input("jwa: c must satisfy 0 < c < k");
    if (std::gcd(k, c) != 1) throw invalid_input("jwa: gcd(k, c) != 1");
}

}  // namespace

JwaTrace jwa_trace(std::int64_t k, std::int64_t c) {
    validate_kc(k, c);
    JwaTrace tr;
    tr.k = k;
    tr.c = c;
    tr.n = {k, c};
    tr.d = {0, 1};
    // loop test n'' >= sqrt(k), evaluated exactly as n''^2 >= k
    while (static_cast<int128>(tr.n.back()) * tr.n.back() >= k) {
        std::int64_t nprev = tr.n[tr.n.size() - 2];
        std::int64_t ncur = tr.n.back();
        std::int64_t quot = nprev / ncur;
        tr.n.push_back(nprev - quot * ncur);
        tr.d.push_back(tr.d[tr.d.size() - 2] - quot * tr.d.back());
        tr.q.push_back(quot);
    }
    tr.t = static_cast<int>(tr.q.size());
    return tr;
}

int iteration_count(std::int64_t k, std::int64_t c) {
    return jwa_trace(k, c).t;
}

ReducedPair jwa_reduce(std::int64_t k, std::int64_t x, std::int64_t y) {
    std::int64_t c = mod_div(x, y, k);
    return jwa_trace(k, c).final_pair();
}

KaryStep kary_step(std::int64_t u, std::int64_t v, std::int64_t k) {
    if (u < 1 || v < 1 || u > kMaxInput || v > kMaxInput)
        throw invalid_input("kary_step: u, v must be positive");
    ReducedPair r = jwa_reduce(k, u, v);
    KaryStep s;
    s.a = r.d;
    s.b = -r.n;
    int128 lin = static_cast<int128>(s.a) * u + static_cast<int128>(s.b) * v;
    if (lin % k != 0) throw inconsistency("kary_step: a*u + b*v not divisible by k");
    int128 up = lin < 0 ? -lin : lin;
    s.uprime = static_cast<std::int64_t>(up / k);
    s.vprime = u < v ? u : v;
    return s;
}

bool verify_output(std::int64_t k, std::int64_t x, std::int64_t y, ReducedPair pair) {
    if (k < 2) return false;
    if (pair.n <= 0 || pair.d == 0) return false;
    if (static_cast<int128>(pair.n) * pair.n >= k) return false;
    if (static_cast<int128>(pair.d) * pair.d >= k) return false;
    int128 lhs = static_cast<int128>(pair.n) * y - static_cast<int128>(pair.d) * x;
    return lhs % k == 0;
}

FastCount count_iterations_unchecked(std::int64_t k, std::int64_t c,
                                     std::int64_t sqrt_floor) noexcept {
    std::int64_t a = k, b = c;
    int t = 0;
    while (b > sqrt_floor) {
        // quotient 1 dominates; subtract first, divide only when q >= 2
        std::int64_t r = a - b;
        if (r >= b) r = a % b;
        a = b;
        b = r;
        ++t;
    }
    while (b != 0) {
        std::int64_t r = a % b;
        a = b;
        b = r;
    }
    return {t, a};
}

}  // namespace jwa
