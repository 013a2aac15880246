#include "jwa/fibonacci.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

#include "jwa/errors.hpp"

namespace jwa {

namespace {

constexpr int kFibMax = 90;

constexpr std::array<std::int64_t, kFibMax + 1> make_fib_table() {
    std::array<std::int64_t, kFibMax + 1> f{};
    f[0] = 0;
    f[1] = 1;
    for (int i = 2; i <= kFibMax; ++i) f[i] = f[i - 1] + f[i - 2];
    return f;
}

constexpr auto kFib = make_fib_table();

}  // namespace

std::int64_t fib(int i) {
    if (i < 0) throw invalid_input("fib: negative index");
    if (i > kFibMax) throw std::overflow_error("fib: index beyond supported width");
    return kFib[static_cast<size_t>(i)];
}

int m_of_k(std::int64_t k) {
    if (k < 1 || k > kMaxInput) throw invalid_input("m_of_k: k out of range");
    int m = 0;  // F_1 = 1 <= sqrt(k) always
    while (static_cast<int128>(fib(m + 2)) * fib(m + 2) <= k) ++m;
    return m;
}

bool IntervalSpec::contains(std::int64_t c) const {
    return static_cast<int128>(c) * lo_den > lo_num && static_cast<int128>(c) * hi_den < hi_num;
}

std::int64_t IntervalSpec::first_member() const {
    return static_cast<std::int64_t>(lo_num / lo_den) + 1;
}

std::int64_t IntervalSpec::last_member() const {
    // largest integer strictly below hi_num/hi_den
    return static_cast<std::int64_t>((hi_num - 1) / hi_den);
}

std::int64_t IntervalSpec::member_count() const {
    std::int64_t n = last_member() - first_member() + 1;
    return n > 0 ? n : 0;
}

IntervalSpec interval_I(std::int64_t k, int p) {
    if (p < 1) throw invalid_input("interval_I: p must be >= 1");
    if (k < 1 || k > kMaxInput) throw invalid_input("interval_I: k out of range");
    if (p > kFibMax - 2) throw std::overflow_error("interval_I: p beyond supported width");
    IntervalSpec iv;
    iv.k = k;
    iv.p = p;
    int128 a_num = static_cast<int128>(fib(p)) * k;        // (F_p / F_{p+1}) k
    std::int64_t a_den = fib(p + 1);
    int128 b_num = static_cast<int128>(fib(p + 1)) * k;    // (F_{p+1} / F_{p+2}) k
    std::int64_t b_den = fib(p + 2);
    if (p % 2 == 0) {
        iv.lo_num = a_num; iv.lo_den = a_den;
        iv.hi_num = b_num; iv.hi_den = b_den;
    } else {
        iv.lo_num = b_num; iv.lo_den = b_den;
        iv.hi_num = a_num; iv.hi_den = a_den;
    }
    return iv;
}

std::vector<std::int64_t> members_J(std::int64_t k, int p) {
    IntervalSpec iv = interval_I(k, p);
    if (iv.member_count() > (std::int64_t(1) << 24))
        throw too_large("members_J: interval too wide to enumerate");
    std::vector<std::int64_t> out;
    for (std::int64_t c = iv.first_member(); c <= iv.last_member(); ++c)
        if (std::gcd(k, c) == 1) out.push_back(c);
    return out;
}

QuotientPattern cf_expansion(std::int64_t num, std::int64_t den) {
    if (den == 0) throw invalid_input("cf_expansion: den = 0");
    if (num < 1 || den < 0 || num > kMaxInput || den > kMaxInput)
        throw invalid_input("cf_expansion: arguments out of range");
    QuotientPattern q;
    while (den != 0) {
        q.push_back(num / den);
        std::int64_t r = num % den;
        num = den;
        den = r;
    }
    return q;
}

int ones_prefix_len(const QuotientPattern& pattern) {
    int n = 0;
    for (std::int64_t q : pattern) {
        if (q != 1) break;
        ++n;
    }
    return n;
}

std::vector<std::int64_t> d_sequence(const QuotientPattern& pattern) {
    if (pattern.empty()) throw invalid_input("d_sequence: empty pattern");
    std::vector<std::int64_t> d;
    d.reserve(pattern.size() + 1);
    std::int64_t prev = 0, cur = 1;  // d_{-1}, d_0
    d.push_back(cur);
    for (std::int64_t q : pattern) {
        if (q < 1) throw invalid_input("d_sequence: quotient < 1");
        // |d_i| = |d_{i-2}| + q_i |d_{i-1}| since signs alternate
        int128 mag = static_cast<int128>(q) * (cur < 0 ? -cur : cur) + (prev < 0 ? -prev : prev);
        if (mag > kMaxInput) throw std::overflow_error("d_sequence: width exhausted");
        std::int64_t next = prev - q * cur;
        prev = cur;
        cur = next;
        d.push_back(cur);
    }
    return d;
}

QuotientPattern ones_with_two_at(int len, int p) {
    if (len < 1 || p < 1 || p > len) throw invalid_input("ones_with_two_at: bad position");
    QuotientPattern q(static_cast<size_t>(len), 1);
    q[static_cast<size_t>(p - 1)] = 2;
    return q;
}

std::int64_t dm_closed_form(int m, int p) {
    if (p < 1 || m < 1) throw invalid_input("dm_closed_form: indices must be >= 1");
    if (p > m) throw invalid_input("dm_closed_form: p > m");
    int128 v = static_cast<int128>(fib(m - p + 1)) * fib(p + 2) +
               static_cast<int128>(fib(m - p)) * fib(p);
    if (v > kMaxInput) throw std::overflow_error("dm_closed_form: width exhausted");
    return static_cast<std::int64_t>(v);
}

Lemma2Thresholds lemma2_thresholds(int m) {
    if (m < 3) throw invalid_input("lemma2_thresholds: m must be >= 3");
    Lemma2Thresholds th;
    th.single_two = fib(m + 1) + fib(m - 1);
    th.any_three = fib(m + 2);
    th.two_twos = fib(m + 2) + 2 * fib(m - 3);
    return th;
}

}  // namespace jwa
