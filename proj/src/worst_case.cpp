#include "jwa/worst_case.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "jwa/errors.hpp"
#include "jwa/trace.hpp"

namespace jwa {

std::string method_name(Method m) {
    switch (m) {
        case Method::brute: return "brute";
        case Method::analytic: return "analytic";
        case Method::both: return "both";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& s) {
    if (s == "brute") return Method::brute;
    if (s == "analytic") return Method::analytic;
    if (s == "both") return Method::both;
    return std::nullopt;
}

namespace {

// Backward recurrence n_{i-1} = n_{i+1} + q_{i+1} n_i from (n_{t-1}, n_t)
// down to n_0; the unrolled form is n_{-1} = |d_t| n_{t-1} + |d_{t-1}| n_t, so
// reaching exactly k at index -1 is equivalent to the level identity.
// The sequence increases strictly, so an overshoot can never recover.
std::int64_t backward_c(std::int64_t k, const QuotientPattern& pattern,
                        std::int64_t n_t, std::int64_t n_tm1) {
    std::int64_t x = n_tm1, y = n_t;  // (n_{j-1}, n_j)
    for (int j = static_cast<int>(pattern.size()); j >= 1; --j) {
        int128 prev = static_cast<int128>(pattern[static_cast<size_t>(j - 1)]) * x + y;
        if (prev > k) throw inconsistency("recover_c: backward recurrence misses k");
        y = x;
        x = static_cast<std::int64_t>(prev);
    }
    if (x != k) throw inconsistency("recover_c: backward recurrence does not reach k");
    return y;
}

struct ChunkResult {
    int best = -1;
    std::vector<std::int64_t> wits;
};

// Scan c in [lo, hi): track the maximal iteration count over coprime c.
// Coprimality is read off the same Euclid run (gcd(k, c) = gcd(n_t, n_{t-1}))
// and only checked once a candidate ties or beats the chunk maximum.
ChunkResult scan_range(std::int64_t k, std::int64_t lo, std::int64_t hi,
                       std::int64_t sqrt_floor) {
    ChunkResult res;
    for (std::int64_t c = lo; c < hi; ++c) {
        FastCount fc = count_iterations_unchecked(k, c, sqrt_floor);
        if (fc.t < res.best || fc.g != 1) continue;
        if (fc.t > res.best) {
            res.best = fc.t;
            res.wits.clear();
        }
        res.wits.push_back(c);
    }
    return res;
}

}  // namespace

TableRow brute_force_N(std::int64_t k, std::int64_t ceiling, int threads) {
    if (k < 2 || k > kMaxInput) throw invalid_input("brute_force_N: k out of range");
    if (k > ceiling) throw too_large("brute_force_N: k above the brute-force ceiling");
    std::int64_t sqrt_floor = isqrt(k - 1);

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (k - 1 < (std::int64_t(1) << 18)) nthreads = 1;

    std::vector<ChunkResult> parts(static_cast<size_t>(nthreads));
    if (nthreads == 1) {
        parts[0] = scan_range(k, 1, k, sqrt_floor);
    } else {
        std::vector<std::thread> pool;
        std::int64_t span = (k - 1 + nthreads - 1) / nthreads;
        for (int i = 0; i < nthreads; ++i) {
            std::int64_t lo = 1 + i * span;
            std::int64_t hi = std::min<std::int64_t>(lo + span, k);
            if (lo >= hi) continue;
            pool.emplace_back([&, i, lo, hi] { parts[static_cast<size_t>(i)] = scan_range(k, lo, hi, sqrt_floor); });
        }
        for (auto& th : pool) th.join();
    }

    TableRow row;
    row.k = k;
    row.m = m_of_k(k);
    row.method = Method::brute;
    row.complete = true;
    int best = 0;
    for (const auto& part : parts) best = std::max(best, part.best);
    for (const auto& part : parts)
        if (part.best == best)
            row.witnesses.insert(row.witnesses.end(), part.wits.begin(), part.wits.end());
    row.n_big = best;
    if (row.n_big > row.m) throw inconsistency("brute_force_N: N(k) exceeds m(k)");
    return row;
}

namespace {

// Solve the level system for one driving pattern: every n_{t-1} in the
// residue class k*|d_t|^{-1} (mod |d_{t-1}|) with n_{t-1}^2 >= k and
// n_{t-1} < k/|d_t|. p_marker tags candidates from the single-2 family.
std::vector<SigmaCandidate> solve_level(std::int64_t k, const QuotientPattern& pattern,
                                        int p_marker) {
    int t = static_cast<int>(pattern.size());
    std::vector<std::int64_t> d = d_sequence(pattern);
    std::int64_t dt = std::abs(d[static_cast<size_t>(t)]);
    std::int64_t dtm1 = std::abs(d[static_cast<size_t>(t - 1)]);

    std::vector<SigmaCandidate> out;
    if (static_cast<int128>(dt) * dt >= k) return out;  // |d_t| < sqrt(k) filter
    if (std::gcd(dt, dtm1) != 1)
        throw inconsistency("solve_level: consecutive continuants not coprime");

    std::int64_t lo = isqrt(k - 1) + 1;
    std::int64_t hi = (k - 1) / dt;
    std::int64_t residue = dtm1 == 1
        ? 0
        : mul_mod(mod_norm(k, dtm1), mod_inverse(dt, dtm1), dtm1);
    std::int64_t start = lo + mod_norm(residue - lo, dtm1);

    for (std::int64_t ntm1 = start; ntm1 <= hi; ntm1 += dtm1) {
        std::int64_t nt = static_cast<std::int64_t>(
            (static_cast<int128>(k) - static_cast<int128>(dt) * ntm1) / dtm1);
        SigmaCandidate cand;
        cand.k = k;
        cand.t = t;
        cand.p = p_marker;
        cand.pattern = pattern;
        cand.d_t_abs = dt;
        cand.d_tm1_abs = dtm1;
        cand.n_tm1 = ntm1;
        cand.n_t = nt;
        if (static_cast<int128>(dt) * ntm1 + static_cast<int128>(dtm1) * nt != k)
            throw inconsistency("solve_level: candidate violates the level identity");

        if (static_cast<int128>(nt) * nt >= k) {
            cand.reject_reason = "n_t^2 >= k";
            out.push_back(std::move(cand));
            continue;
        }
        // c by the backward recurrence; the dual-route recover_c additionally
        // cross-checks the congruence form whenever d_{t-1} is invertible
        std::int64_t c = std::gcd(dtm1, k) == 1 ? recover_c(k, pattern, nt, ntm1)
                                                : backward_c(k, pattern, nt, ntm1);
        cand.c = c;
        if (std::gcd(k, c) != 1) {
            cand.reject_reason = "gcd(k, c) > 1";
        } else if (std::gcd(nt, ntm1) != 1) {
            cand.reject_reason = "gcd(n_t, n_{t-1}) > 1";
        } else if (iteration_count(k, c) != t) {
            cand.reject_reason = "forward verification t mismatch";
        } else {
            cand.accepted = true;
        }
        out.push_back(std::move(cand));
    }
    return out;
}

// Depth-first walk over length-t patterns whose continuant can still end
// below sqrt(k). K(prefix + ones(rem)) = K_j F_{rem+1} + K_{j-1} F_{rem} is
// the smallest completion, and continuants grow in every quotient, so both
// loop exits are exact cutoffs.
void pattern_dfs(std::int64_t k, int t, QuotientPattern& prefix, std::int64_t kj_prev,
                 std::int64_t kj_prev2, int twos, bool has_big,
                 std::vector<SigmaCandidate>& out) {
    int j = static_cast<int>(prefix.size());
    if (j == t) {
        bool all_ones = twos == 0 && !has_big;
        bool single_two = twos == 1 && !has_big;
        if (!all_ones && !single_two) {
            auto cands = solve_level(k, prefix, 0);
            out.insert(out.end(), cands.begin(), cands.end());
        }
        return;
    }
    int rem = t - j - 1;  // slots left after placing q at position j+1
    for (std::int64_t q = 1;; ++q) {
        int128 kj = static_cast<int128>(q) * kj_prev + kj_prev2;
        if (kj * kj >= k) break;
        int128 fin = kj * fib(rem + 1) + static_cast<int128>(kj_prev) * fib(rem);
        if (fin * fin >= k) {
            if (q == 1) return;  // even the all-ones completion overshoots
            break;
        }
        prefix.push_back(q);
        pattern_dfs(k, t, prefix, static_cast<std::int64_t>(kj), kj_prev,
                    twos + (q == 2 ? 1 : 0), has_big || q >= 3, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<SigmaCandidate> sigma_solutions(std::int64_t k, int t, int p) {
    if (k < 2 || k > kMaxInput) throw invalid_input("sigma_solutions: k out of range");
    if (t < 1 || p < 1 || p > t) throw invalid_input("sigma_solutions: need 1 <= p <= t");
    return solve_level(k, ones_with_two_at(t, p), p);
}

std::vector<SigmaCandidate> extended_level_candidates(std::int64_t k, int t) {
    if (k < 2 || k > kMaxInput) throw invalid_input("extended_level_candidates: k out of range");
    if (t < 1) throw invalid_input("extended_level_candidates: t must be >= 1");
    std::vector<SigmaCandidate> out;
    std::int64_t f = fib(t + 2);
    if (static_cast<int128>(f) * f >= k) return out;  // no pattern beyond single-2 fits
    QuotientPattern prefix;
    prefix.reserve(static_cast<size_t>(t));
    pattern_dfs(k, t, prefix, 1, 0, 0, false, out);
    return out;
}

std::int64_t recover_c(std::int64_t k, const QuotientPattern& pattern,
                       std::int64_t n_t, std::int64_t n_tm1) {
    if (k < 2 || k > kMaxInput) throw invalid_input("recover_c: k out of range");
    if (pattern.empty()) throw invalid_input("recover_c: empty pattern");
    if (n_t < 1 || n_t >= n_tm1) throw invalid_input("recover_c: need 0 < n_t < n_{t-1}");
    int t = static_cast<int>(pattern.size());

    std::int64_t c_back = backward_c(k, pattern, n_t, n_tm1);

    // congruence route with the signed d_{t-1}
    std::vector<std::int64_t> d = d_sequence(pattern);
    std::int64_t d_tm1 = d[static_cast<size_t>(t - 1)];
    if (std::gcd(mod_norm(d_tm1, k), k) != 1)
        throw not_invertible("recover_c: gcd(d_{t-1}, k) != 1");
    std::int64_t c_mod = mul_mod(mod_norm(n_tm1, k), mod_inverse(d_tm1, k), k);
    if (c_mod != c_back)
        throw inconsistency("recover_c: backward and congruence routes disagree");
    return c_back;
}

namespace {

// J_t probe of the descent: all members of J_t whose run takes exactly t
// iterations. Also reports the largest iteration count seen, as a guard
// against a witness slipping past a higher level.
struct ProbeResult {
    std::vector<std::int64_t> achievers;
    int max_seen = -1;
    std::vector<std::int64_t> max_seen_cs;
};

ProbeResult probe_level(std::int64_t k, int t) {
    ProbeResult pr;
    for (std::int64_t c : members_J(k, t)) {
        int tc = iteration_count(k, c);
        if (tc == t) pr.achievers.push_back(c);
        if (tc > pr.max_seen) {
            pr.max_seen = tc;
            pr.max_seen_cs.clear();
        }
        if (tc == pr.max_seen) pr.max_seen_cs.push_back(c);
    }
    return pr;
}

}  // namespace

TableRow analytic_N(std::int64_t k, std::int64_t ceiling) {
    if (k < 3 || k > kMaxInput) throw invalid_input("analytic_N: k must be >= 3");
    TableRow row;
    row.k = k;
    row.m = m_of_k(k);
    row.method = Method::analytic;

    for (int t = row.m; t >= 1; --t) {
        if (t < row.m - 4) {
            // the level-by-level characterization is only proven at t = m;
            // finish honestly by brute force and flag the row
            TableRow brute = brute_force_N(k, ceiling);
            brute.method = Method::analytic;
            brute.fallback_used = true;
            return brute;
        }

        ProbeResult pr = probe_level(k, t);
        if (pr.max_seen > t) {
            // a J_t member runs longer than every level above admitted;
            // its count is a verified lower bound, so return it directly
            row.n_big = pr.max_seen;
            row.witnesses = pr.max_seen_cs;
            return row;
        }
        if (!pr.achievers.empty()) {
            row.n_big = t;
            row.witnesses = std::move(pr.achievers);
            return row;
        }

        std::int64_t gate = fib(t + 1) + fib(t - 1);
        if (static_cast<int128>(gate) * gate < k) {
            std::vector<std::int64_t> cs;
            for (int p = 1; p <= t; ++p)
                for (const SigmaCandidate& cand : sigma_solutions(k, t, p))
                    if (cand.accepted) cs.push_back(*cand.c);
            if (!cs.empty()) {
                std::sort(cs.begin(), cs.end());
                cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
                row.n_big = t;
                row.witnesses = std::move(cs);
                return row;
            }
        }

        // below t = m a run can also be driven by patterns with a quotient
        // >= 3 or several 2s (possible once F_{t+2}^2 < k); without this
        // sweep the descent undercounts, e.g. N(4122) = 8 solely via
        // k/c = [1,3,1,...]
        std::vector<std::int64_t> ext;
        for (const SigmaCandidate& cand : extended_level_candidates(k, t))
            if (cand.accepted) ext.push_back(*cand.c);
        if (!ext.empty()) {
            std::sort(ext.begin(), ext.end());
            ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
            row.n_big = t;
            row.witnesses = std::move(ext);
            return row;
        }
    }
    throw inconsistency("analytic_N: descent exhausted (k-1 should accept at t = 1)");
}

WorstCaseSet worst_case_cs(std::int64_t k, std::int64_t ceiling, bool strict) {
    if (k < 3 || k > kMaxInput) throw invalid_input("worst_case_cs: k must be >= 3");
    WorstCaseSet ws;
    ws.k = k;
    ws.m = m_of_k(k);
    if (k <= ceiling) {
        TableRow row = brute_force_N(k, ceiling);
        ws.n_big = row.n_big;
        ws.witnesses = std::move(row.witnesses);
        ws.complete = true;
        return ws;
    }
    TableRow row = analytic_N(k, ceiling);
    ws.n_big = row.n_big;
    std::set<std::int64_t> wits;
    int t = row.n_big;
    if (t >= 1) {
        for (std::int64_t c : members_J(k, t))
            if (iteration_count(k, c) == t) wits.insert(c);
        std::int64_t gate = fib(t + 1) + fib(t - 1);
        if (static_cast<int128>(gate) * gate < k)
            for (int p = 1; p <= t; ++p)
                for (const SigmaCandidate& cand : sigma_solutions(k, t, p))
                    if (cand.accepted) wits.insert(*cand.c);
    }
    ws.witnesses.assign(wits.begin(), wits.end());
    ws.complete = (row.n_big == row.m);
    if (strict && !ws.complete)
        throw too_large("worst_case_cs: completeness unavailable above the ceiling for N < m");
    return ws;
}

std::vector<TableRow> table_rows(const std::vector<std::int64_t>& ks, Method method,
                                 std::int64_t ceiling) {
    std::vector<TableRow> rows;
    rows.reserve(ks.size());
    for (std::int64_t k : ks) {
        switch (method) {
            case Method::brute:
                rows.push_back(brute_force_N(k, ceiling));
                break;
            case Method::analytic:
                rows.push_back(analytic_N(k, ceiling));
                break;
            case Method::both: {
                TableRow b = brute_force_N(k, ceiling);
                TableRow a = analytic_N(k, ceiling);
                if (a.n_big != b.n_big) {
                    std::ostringstream os;
                    os << "table_rows: N(" << k << ") mismatch: brute " << b.n_big
                       << " vs analytic " << a.n_big;
                    throw method_mismatch(os.str());
                }
                b.method = Method::both;
                rows.push_back(std::move(b));
                break;
            }
        }
    }
    return rows;
}

std::vector<TableRow> cache_load(const std::string& path) {
    std::vector<TableRow> rows;
    std::ifstream in(path);
    if (!in) return rows;  // missing file is fine
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        TableRow row;
        std::string method, wits;
        if (!(is >> row.k >> row.m >> row.n_big >> method)) continue;
        auto meth = method_from_name(method);
        if (!meth) continue;
        row.method = *meth;
        row.complete = (row.method != Method::analytic);
        if (is >> wits && wits != "-") {
            std::istringstream ws(wits);
            std::string item;
            while (std::getline(ws, item, ','))
                if (!item.empty()) row.witnesses.push_back(std::stoll(item));
        }
        // last-write-wins on duplicate k
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const TableRow& r) { return r.k == row.k; });
        if (it != rows.end())
            *it = std::move(row);
        else
            rows.push_back(std::move(row));
    }
    return rows;
}

void cache_append(const std::string& path, const TableRow& row) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw invalid_input("cache_append: cannot open " + path);
    out << row.k << '\t' << row.m << '\t' << row.n_big << '\t' << method_name(row.method)
        << '\t';
    if (row.witnesses.empty()) {
        out << '-';
    } else {
        for (size_t i = 0; i < row.witnesses.size(); ++i) {
            if (i) out << ',';
            out << row.witnesses[i];
        }
    }
    out << '\n';
}

std::optional<TableRow> cache_find(const std::vector<TableRow>& rows, std::int64_t k,
                                   Method method) {
    for (const TableRow& row : rows)
        if (row.k == k && row.method == method) return row;
    return std::nullopt;
}

}  // namespace jwa
