#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "jwa/errors.hpp"
#include "jwa/fibonacci.hpp"
#include "jwa/trace.hpp"

using jwa::int128;

namespace {

// independent oracle: plain Euclid remainders of (k, c), stopping once the
// remainder squared drops below k; decides nothing through the library
std::vector<std::int64_t> euclid_until_below_sqrt(std::int64_t k, std::int64_t c) {
    std::vector<std::int64_t> ns = {k, c};
    while (static_cast<int128>(ns.back()) * ns.back() >= k) {
        std::int64_t a = ns[ns.size() - 2], b = ns.back();
        ns.push_back(a % b);
    }
    return ns;
}

void check_trace_invariants(const jwa::JwaTrace& tr) {
    std::int64_t k = tr.k, c = tr.c;
    REQUIRE(tr.n_at(-1) == k);
    REQUIRE(tr.n_at(0) == c);
    REQUIRE(tr.d_at(-1) == 0);
    REQUIRE(tr.d_at(0) == 1);
    for (int i = 1; i <= tr.t; ++i) {
        REQUIRE(tr.q_at(i) == tr.n_at(i - 2) / tr.n_at(i - 1));
        REQUIRE(tr.n_at(i) == tr.n_at(i - 2) - tr.q_at(i) * tr.n_at(i - 1));
        REQUIRE(tr.d_at(i) == tr.d_at(i - 2) - tr.q_at(i) * tr.d_at(i - 1));
    }
    // sign(d_i) = (-1)^i
    for (int i = 0; i <= tr.t; ++i)
        REQUIRE((i % 2 == 0 ? tr.d_at(i) > 0 : tr.d_at(i) < 0));
    // n_i == d_i c (mod k) at every index
    for (int i = -1; i <= tr.t; ++i) {
        int128 diff = static_cast<int128>(tr.n_at(i)) - static_cast<int128>(tr.d_at(i)) * c;
        REQUIRE(diff % k == 0);
    }
    // loop identity n_i |d_{i+1}| + n_{i+1} |d_i| = k over 0 <= i <= t-1
    for (int i = 0; i + 1 <= tr.t; ++i) {
        int128 lhs = static_cast<int128>(tr.n_at(i)) * std::abs(tr.d_at(i + 1)) +
                     static_cast<int128>(tr.n_at(i + 1)) * std::abs(tr.d_at(i));
        REQUIRE(lhs == k);
    }
    // exit bounds
    if (tr.t == 0) {
        REQUIRE(static_cast<int128>(c) * c < k);
    } else {
        REQUIRE(static_cast<int128>(tr.n_at(tr.t)) * tr.n_at(tr.t) < k);
        REQUIRE(static_cast<int128>(tr.n_at(tr.t - 1)) * tr.n_at(tr.t - 1) >= k);
    }
    // Fibonacci growth of the cofactors and the iteration bound
    REQUIRE(std::abs(tr.d_at(tr.t)) >= jwa::fib(tr.t + 1));
    REQUIRE(tr.t <= jwa::m_of_k(k));
    // quotients are the leading continued-fraction quotients of k/c
    jwa::QuotientPattern cf = jwa::cf_expansion(k, c);
    REQUIRE(cf.size() >= static_cast<size_t>(tr.t));
    for (int i = 1; i <= tr.t; ++i)
        REQUIRE(cf[static_cast<size_t>(i - 1)] == tr.q_at(i));
}

}  // namespace

TEST_CASE("jwa_trace(1024, 633) runs the pinned worst case") {
    auto ns = euclid_until_below_sqrt(1024, 633);
    REQUIRE(ns == std::vector<std::int64_t>{1024, 633, 391, 242, 149, 93, 56, 37, 19});

    jwa::JwaTrace tr = jwa::jwa_trace(1024, 633);
    CHECK(tr.t == 7);
    REQUIRE(tr.n.size() == ns.size());
    for (size_t i = 0; i < ns.size(); ++i) CHECK(tr.n[i] == ns[i]);
    CHECK(tr.final_pair().n == 19);
    CHECK(tr.final_pair().d == -21);
    check_trace_invariants(tr);
}

TEST_CASE("jwa_trace(16, 11): quotients (1, 2), final (1, 3)") {
    jwa::JwaTrace tr = jwa::jwa_trace(16, 11);
    CHECK(tr.t == 2);
    CHECK(tr.q == std::vector<std::int64_t>{1, 2});
    CHECK(tr.final_pair().n == 1);
    CHECK(tr.final_pair().d == 3);
    check_trace_invariants(tr);
}

TEST_CASE("c = 1 exits before the loop") {
    for (std::int64_t k : {2LL, 3LL, 16LL, 1024LL, 15849LL}) {
        jwa::JwaTrace tr = jwa::jwa_trace(k, 1);
        CHECK(tr.t == 0);
        CHECK(tr.final_pair().n == 1);
        CHECK(tr.final_pair().d == 1);
    }
}

TEST_CASE("iteration_count on the pinned values") {
    CHECK(jwa::iteration_count(1024, 633) == 7);
    CHECK(jwa::iteration_count(65536, 40503) == 12);
    CHECK(jwa::iteration_count(15849, 11468) == 10);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(jwa::jwa_trace(16, 4), jwa::invalid_input);   // gcd != 1
    CHECK_THROWS_AS(jwa::jwa_trace(16, 0), jwa::invalid_input);
    CHECK_THROWS_AS(jwa::jwa_trace(16, 16), jwa::invalid_input);
    CHECK_THROWS_AS(jwa::jwa_trace(1, 1), jwa::invalid_input);
    CHECK_THROWS_AS(jwa::jwa_trace(16, -3), jwa::invalid_input);
}

TEST_CASE("jwa_reduce on the pinned values") {
    jwa::ReducedPair r = jwa::jwa_reduce(1024, 633, 1);
    CHECK(r.n == 19);
    CHECK(r.d == -21);
    // 21*633 = 13293 == 1005 (mod 1024), and -1005 == 19 (mod 1024)
    CHECK((static_cast<int128>(19) * 1 - static_cast<int128>(-21) * 633) % 1024 == 0);

    jwa::ReducedPair r16 = jwa::jwa_reduce(16, 11, 1);
    CHECK(r16.n == 1);
    CHECK(r16.d == 3);

    for (std::int64_t x : {3LL, 633LL, 1021LL}) {
        jwa::ReducedPair rp = jwa::jwa_reduce(1024, x, x);
        CHECK(rp.n == 1);
        CHECK(rp.d == 1);
    }
}

TEST_CASE("verify_output") {
    CHECK(jwa::verify_output(1024, 633, 1, {19, -21}));
    CHECK_FALSE(jwa::verify_output(1024, 633, 1, {19, 21}));
    CHECK(jwa::verify_output(1024, 633, 633, {1, 1}));
    CHECK_FALSE(jwa::verify_output(1024, 633, 1, {0, -21}));
    CHECK_FALSE(jwa::verify_output(1024, 633, 1, {64, -21}));  // n^2 >= k
}

TEST_CASE("kary_step on the pinned values") {
    jwa::KaryStep s = jwa::kary_step(633, 1, 1024);
    CHECK(s.a == -21);
    CHECK(s.b == -19);
    CHECK(s.uprime == 13);  // |-21*633 - 19| = 13312 = 13*1024
    CHECK(s.vprime == 1);

    jwa::KaryStep eq = jwa::kary_step(1, 1, 4);
    CHECK(eq.uprime == 0);
    CHECK(eq.vprime == 1);
    CHECK(eq.a == 1);
    CHECK(eq.b == -1);
}

TEST_CASE("kary_step contract on random triples") {
    std::mt19937_64 rng(0x6ba7ULL);
    std::uniform_int_distribution<std::int64_t> kd(2, std::int64_t(1) << 32);
    std::uniform_int_distribution<std::int64_t> uv(1, std::int64_t(1) << 40);
    int done = 0;
    while (done < 10'000) {
        std::int64_t k = kd(rng), u = uv(rng), v = uv(rng);
        if (std::gcd(k, u) != 1 || std::gcd(k, v) != 1) continue;
        ++done;
        jwa::KaryStep s = jwa::kary_step(u, v, k);
        int128 lin = static_cast<int128>(s.a) * u + static_cast<int128>(s.b) * v;
        REQUIRE(lin % k == 0);
        REQUIRE(static_cast<int128>(s.a) * s.a < k);
        REQUIRE(static_cast<int128>(s.b) * s.b < k);
        REQUIRE(s.a != 0);
        REQUIRE(s.b != 0);
        int128 up = lin < 0 ? -lin : lin;
        REQUIRE(up / k == s.uprime);
        REQUIRE(s.vprime == std::min(u, v));
    }
}

TEST_CASE("trace invariants on random valid inputs") {
    std::mt19937_64 rng(0x7e57ULL);
    std::uniform_int_distribution<std::int64_t> kd(2, std::int64_t(1) << 32);
    int done = 0;
    while (done < 2000) {
        std::int64_t k = kd(rng);
        std::uniform_int_distribution<std::int64_t> cd(1, k - 1);
        std::int64_t c = cd(rng);
        if (std::gcd(k, c) != 1) continue;
        ++done;
        check_trace_invariants(jwa::jwa_trace(k, c));
    }
}

TEST_CASE("lean counter agrees with the full trace") {
    std::mt19937_64 rng(0x1ea4ULL);
    std::uniform_int_distribution<std::int64_t> kd(2, std::int64_t(1) << 32);
    int done = 0;
    while (done < 5000) {
        std::int64_t k = kd(rng);
        std::uniform_int_distribution<std::int64_t> cd(1, k - 1);
        std::int64_t c = cd(rng);
        ++done;
        jwa::FastCount fc = jwa::count_iterations_unchecked(k, c, jwa::isqrt(k - 1));
        REQUIRE(fc.g == std::gcd(k, c));
        if (fc.g == 1) REQUIRE(fc.t == jwa::jwa_trace(k, c).t);
    }
}
