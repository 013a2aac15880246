#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jwa/fibonacci.hpp"

namespace jwa {

enum class Method { brute, analytic, both };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& s);

// One table entry: N(k) together with the witnesses that achieve it.
// `complete` means the witness list provably contains every worst-case c;
// `fallback_used` marks rows the analytic search had to finish by brute force.
struct TableRow {
    std::int64_t k = 0;
    int m = 0;
    int n_big = 0;
    std::vector<std::int64_t> witnesses;
    Method method = Method::brute;
    bool complete = false;
    bool fallback_used = false;
};

// One solution attempt of the Diophantine system for level t and a single
// quotient 2 at position p: n_{t-1} |d_t| + n_t |d_{t-1}| = k (always exact for
// emitted candidates), with acceptance requiring gcd(n_t, n_{t-1}) = 1,
// n_t^2 < k <= n_{t-1}^2, gcd(k, c) = 1, and a forward run of exactly t
// iterations. Rejected candidates are emitted with the reason kept.
struct SigmaCandidate {
    std::int64_t k = 0;
    int t = 0;
    int p = 0;  // position of the single 2; 0 for other driving patterns
    QuotientPattern pattern;
    std::int64_t d_t_abs = 0;
    std::int64_t d_tm1_abs = 0;
    std::int64_t n_tm1 = 0;
    std::int64_t n_t = 0;
    std::optional<std::int64_t> c;
    bool accepted = false;
    std::string reject_reason;  // empty when accepted
};

inline constexpr std::int64_t kDefaultBruteCeiling = std::int64_t(1) << 24;
inline constexpr int kDefaultWitnessCap = 64;

// Exact N(k) by scanning every coprime c in (0, k); witnesses ascending and
// complete. The c-range is split into chunks processed in parallel; partial
// results merge by max and ordered concatenation, so the output is
// deterministic. Throws too_large above the ceiling.
TableRow brute_force_N(std::int64_t k, std::int64_t ceiling = kDefaultBruteCeiling,
                       int threads = 0);

// All solutions of the system at (k, t, p): n_{t-1} runs over the residue
// class k*|d_t|^{-1} (mod |d_{t-1}|) within sqrt(k) < n_{t-1} < k/|d_t|
// (exact integer bounds, the lower one inclusive of n_{t-1}^2 >= k).
// Returns an empty list when |d_t|^2 >= k. Candidates are emitted in
// ascending n_{t-1} order, rejected ones included.
std::vector<SigmaCandidate> sigma_solutions(std::int64_t k, int t, int p);

// Level-t candidates for every other admissible leading-quotient pattern:
// the single-2 family above covers one quotient equal to 2, but once
// F_{t+2}^2 < k a run of exactly t iterations can also be driven by a
// quotient >= 3 or by several 2s. Enumerates all length-t patterns with
// continuant below sqrt(k) except the all-ones and single-2 shapes (those are
// the J_t probe and sigma_solutions), solving the same system for each.
std::vector<SigmaCandidate> extended_level_candidates(std::int64_t k, int t);

// Reconstruct c from the two trailing remainders of a length-t pattern run.
// Computed two independent ways that must agree: the backward recurrence
// n_{i-1} = n_{i+1} + q_{i+1} n_i down to n_0 (checking n_{-1} = k), and the
// congruence c == n_{t-1} * d_{t-1}^{-1} (mod k) with the signed d_{t-1}.
std::int64_t recover_c(std::int64_t k, const QuotientPattern& pattern,
                       std::int64_t n_t, std::int64_t n_tm1);

// N(k) by the analytic descent: t starts at m(k); at each level, first probe
// the members of J_t(k) for a run of exactly t iterations, then (when
// (F_{t+1}+F_{t-1})^2 < k) search the Diophantine system over p = 1..t.
// Descending below m-4 falls back to brute force with the row flagged.
TableRow analytic_N(std::int64_t k, std::int64_t ceiling = kDefaultBruteCeiling);

// Every c with t(k, c) = N(k). Below the ceiling this is the brute-force
// list (complete). Above it: J_N members passing the trace check plus
// accepted Diophantine candidates, complete only when N = m. With strict set,
// an incomplete result throws too_large instead.
struct WorstCaseSet {
    std::int64_t k = 0;
    int m = 0;
    int n_big = 0;
    std::vector<std::int64_t> witnesses;
    bool complete = false;
};
WorstCaseSet worst_case_cs(std::int64_t k, std::int64_t ceiling = kDefaultBruteCeiling,
                           bool strict = false);

// One row per k, in input order. Method both runs the two routes and throws
// method_mismatch if they disagree.
std::vector<TableRow> table_rows(const std::vector<std::int64_t>& ks, Method method,
                                 std::int64_t ceiling = kDefaultBruteCeiling);

// Append-only result cache: tab-separated `k m N method witnesses` rows.
// Loading tolerates a missing file; duplicate k entries resolve to the last
// written row.
std::vector<TableRow> cache_load(const std::string& path);
void cache_append(const std::string& path, const TableRow& row);
std::optional<TableRow> cache_find(const std::vector<TableRow>& rows, std::int64_t k,
                                   Method method);

}  // namespace jwa
