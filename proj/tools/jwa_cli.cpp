// Command-line surface for the k-ary reduction loop and its worst-case
// analysis: single reductions with full traces, iteration counts, N(k) by
// brute force or by the analytic descent, worst-case witness enumeration,
// continued fractions and the Fibonacci-ratio intervals.

#include <cstdint>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "jwa/errors.hpp"
#include "jwa/fibonacci.hpp"
#include "jwa/intmath.hpp"
#include "jwa/record.hpp"
#include "jwa/trace.hpp"
#include "jwa/worst_case.hpp"

namespace {

struct GlobalOpts {
    jwa::OutputFormat format = jwa::OutputFormat::tsv;
    bool strict = false;
    std::string cache_path;
    std::int64_t ceiling = jwa::kDefaultBruteCeiling;
    int witness_cap = jwa::kDefaultWitnessCap;  // 0 = unlimited
};

std::vector<std::int64_t> capped(const std::vector<std::int64_t>& v, int cap) {
    if (cap <= 0 || static_cast<int>(v.size()) <= cap) return v;
    return {v.begin(), v.begin() + cap};
}

void fill_trace_steps(jwa::OutputRecord& rec, const jwa::JwaTrace& tr) {
    rec.has_steps = true;
    for (int i = -1; i <= tr.t; ++i) {
        jwa::OutputRecord::StepRow row;
        row.i = i;
        if (i >= 1) row.q = tr.q_at(i);
        row.n = tr.n_at(i);
        row.d = tr.d_at(i);
        rec.steps.push_back(row);
    }
}

void emit(const jwa::OutputRecord& rec, const GlobalOpts& g) {
    std::cout << rec.render(g.format);
}

void row_results(jwa::OutputRecord& rec, const jwa::TableRow& row, int cap) {
    rec.result("k", row.k);
    rec.result("m", static_cast<std::int64_t>(row.m));
    rec.result("N", static_cast<std::int64_t>(row.n_big));
    rec.result("method", jwa::method_name(row.method));
    rec.result("complete", row.complete);
    rec.result("fallback_used", row.fallback_used);
    rec.result("witness_count", static_cast<std::int64_t>(row.witnesses.size()));
    rec.result_list("witnesses", capped(row.witnesses, cap));
}

int cmd_reduce(const GlobalOpts& g, std::int64_t k, std::int64_t x, std::int64_t y,
               bool trace_flag) {
    std::int64_t c = jwa::mod_div(x, y, k);
    jwa::JwaTrace tr = jwa::jwa_trace(k, c);
    jwa::ReducedPair pair = tr.final_pair();
    jwa::OutputRecord rec;
    rec.command = "reduce";
    rec.input("k", k);
    rec.input("x", x);
    rec.input("y", y);
    rec.result("c", c);
    rec.result("n", pair.n);
    rec.result("d", pair.d);
    rec.result("t", static_cast<std::int64_t>(tr.t));
    rec.result("verified", jwa::verify_output(k, x, y, pair));
    if (trace_flag) fill_trace_steps(rec, tr);
    emit(rec, g);
    return 0;
}

int cmd_t(const GlobalOpts& g, std::int64_t k, std::int64_t c, bool trace_flag) {
    jwa::JwaTrace tr = jwa::jwa_trace(k, c);
    jwa::OutputRecord rec;
    rec.command = "t";
    rec.input("k", k);
    rec.input("c", c);
    rec.result("t", static_cast<std::int64_t>(tr.t));
    rec.result("n", tr.final_pair().n);
    rec.result("d", tr.final_pair().d);
    if (trace_flag) fill_trace_steps(rec, tr);
    emit(rec, g);
    return 0;
}

int cmd_nk(const GlobalOpts& g, std::int64_t k, jwa::Method method) {
    jwa::TableRow row = jwa::table_rows({k}, method, g.ceiling).at(0);
    jwa::OutputRecord rec;
    rec.command = "nk";
    rec.input("k", k);
    rec.input("method", jwa::method_name(method));
    row_results(rec, row, g.witness_cap);
    emit(rec, g);
    return 0;
}

int cmd_worst(const GlobalOpts& g, std::int64_t k) {
    jwa::WorstCaseSet ws = jwa::worst_case_cs(k, g.ceiling, g.strict);
    jwa::OutputRecord rec;
    rec.command = "worst";
    rec.input("k", k);
    rec.result("k", ws.k);
    rec.result("m", static_cast<std::int64_t>(ws.m));
    rec.result("N", static_cast<std::int64_t>(ws.n_big));
    rec.result("witness_count", static_cast<std::int64_t>(ws.witnesses.size()));
    rec.result_list("witnesses", capped(ws.witnesses, g.witness_cap));
    rec.result("complete", ws.complete);
    emit(rec, g);
    return 0;
}

int cmd_table(const GlobalOpts& g, std::vector<std::int64_t> ks, bool pow2_even, int max_s,
              jwa::Method method) {
    if (pow2_even) {
        ks.clear();
        for (int s = 2; s <= max_s; ++s) ks.push_back(std::int64_t(1) << (2 * s));
    }

    std::vector<jwa::TableRow> cached;
    if (!g.cache_path.empty()) cached = jwa::cache_load(g.cache_path);

    std::vector<jwa::TableRow> rows;
    for (std::int64_t k : ks) {
        if (auto hit = jwa::cache_find(cached, k, method)) {
            rows.push_back(*hit);
            continue;
        }
        jwa::TableRow row = jwa::table_rows({k}, method, g.ceiling).at(0);
        if (!g.cache_path.empty()) jwa::cache_append(g.cache_path, row);
        rows.push_back(std::move(row));
    }

    if (g.format == jwa::OutputFormat::tsv) {
        std::cout << "# table method=" << jwa::method_name(method) << " rows=" << rows.size()
                  << " schema=1\n";
        std::cout << "k\tm\tN\tmethod\tcomplete\tfallback_used\twitness_count\twitnesses\n";
        for (const jwa::TableRow& row : rows) {
            std::cout << row.k << '\t' << row.m << '\t' << row.n_big << '\t'
                      << jwa::method_name(row.method) << '\t'
                      << (row.complete ? "true" : "false") << '\t'
                      << (row.fallback_used ? "true" : "false") << '\t'
                      << row.witnesses.size() << '\t';
            std::vector<std::int64_t> w = capped(row.witnesses, g.witness_cap);
            for (size_t i = 0; i < w.size(); ++i) {
                if (i) std::cout << ',';
                std::cout << w[i];
            }
            std::cout << '\n';
        }
    } else {
        for (const jwa::TableRow& row : rows) {
            jwa::OutputRecord rec;
            rec.command = "table";
            rec.input("k", row.k);
            rec.input("method", jwa::method_name(method));
            row_results(rec, row, g.witness_cap);
            emit(rec, g);
        }
    }
    return 0;
}

int cmd_cf(const GlobalOpts& g, std::int64_t num, std::int64_t den) {
    jwa::QuotientPattern q = jwa::cf_expansion(num, den);
    jwa::OutputRecord rec;
    rec.command = "cf";
    rec.input("num", num);
    rec.input("den", den);
    rec.result_list("quotients", q);
    rec.result("length", static_cast<std::int64_t>(q.size()));
    rec.result("ones_prefix", static_cast<std::int64_t>(jwa::ones_prefix_len(q)));
    emit(rec, g);
    return 0;
}

int cmd_intervals(const GlobalOpts& g, std::int64_t k, int p) {
    jwa::IntervalSpec iv = jwa::interval_I(k, p);
    jwa::OutputRecord rec;
    rec.command = "intervals";
    rec.input("k", k);
    rec.input("p", static_cast<std::int64_t>(p));
    rec.result("lo_num", jwa::to_string_i128(iv.lo_num));
    rec.result("lo_den", iv.lo_den);
    rec.result("hi_num", jwa::to_string_i128(iv.hi_num));
    rec.result("hi_den", iv.hi_den);
    std::int64_t count = iv.member_count();
    rec.result("member_count", count);
    std::vector<std::int64_t> members;
    std::vector<std::int64_t> coprime;
    if (count > 0 && count <= (std::int64_t(1) << 24)) {
        for (std::int64_t c = iv.first_member(); c <= iv.last_member(); ++c) {
            members.push_back(c);
            if (std::gcd(k, c) == 1) coprime.push_back(c);
        }
        rec.result_list("members", capped(members, g.witness_cap));
        rec.result("coprime_count", static_cast<std::int64_t>(coprime.size()));
        rec.result_list("coprime_members", capped(coprime, g.witness_cap));
    } else {
        rec.result_list("members", capped(members, g.witness_cap));
        rec.result("enumerated", false);
    }
    emit(rec, g);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-ary GCD reduction loop and its exact worst-case analysis"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::string format = "tsv";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
    app.add_flag("--strict", g.strict, "fail when witness completeness is unavailable");
    app.add_option("--cache", g.cache_path, "append-only result cache file");
    app.add_option("--ceiling", g.ceiling, "brute-force ceiling (default 2^24)");
    app.add_option("--witness-cap", g.witness_cap,
                   "max witnesses listed per row, 0 = unlimited (default 64)");

    std::int64_t k = 0, x = 0, y = 0, c = 0, num = 0, den = 0;
    int p = 0, max_s = 16;
    bool trace_flag = false, pow2_even = false;
    std::vector<std::int64_t> ks;
    std::string method_str = "brute";

    CLI::App* reduce = app.add_subcommand("reduce", "run one reduction (k, x, y) -> (n, d)");
    reduce->add_option("--k", k)->required();
    reduce->add_option("--x", x)->required();
    reduce->add_option("--y", y)->required();
    reduce->add_flag("--trace", trace_flag, "print the full step table");

    CLI::App* tcmd = app.add_subcommand("t", "iteration count t(k, c)");
    tcmd->add_option("--k", k)->required();
    tcmd->add_option("--c", c)->required();
    tcmd->add_flag("--trace", trace_flag, "print the full step table");

    CLI::App* nk = app.add_subcommand("nk", "worst-case iteration count N(k)");
    nk->add_option("--k", k)->required();
    nk->add_option("--method", method_str)->check(CLI::IsMember({"brute", "analytic", "both"}));

    CLI::App* worst = app.add_subcommand("worst", "all worst-case inputs c for k");
    worst->add_option("--k", k)->required();

    CLI::App* table = app.add_subcommand("table", "N(k) table for a list of k");
    table->add_option("--k", ks, "k values (repeatable)");
    table->add_flag("--pow2-even", pow2_even, "use k = 2^(2s), s = 2..max-s");
    table->add_option("--max-s", max_s, "largest s for --pow2-even (default 16)")
        ->check(CLI::Range(2, 30));
    table->add_option("--method", method_str)
        ->check(CLI::IsMember({"brute", "analytic", "both"}));

    CLI::App* cf = app.add_subcommand("cf", "continued-fraction quotients of num/den");
    cf->add_option("--num", num)->required();
    cf->add_option("--den", den)->required();

    CLI::App* intervals = app.add_subcommand("intervals", "interval I_p(k) and its members");
    intervals->add_option("--k", k)->required();
    intervals->add_option("--p", p)->required();

    // global flags remain valid after the subcommand name
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    g.format = format == "json" ? jwa::OutputFormat::json : jwa::OutputFormat::tsv;

    try {
        auto method = jwa::method_from_name(method_str);
        if (reduce->parsed()) return cmd_reduce(g, k, x, y, trace_flag);
        if (tcmd->parsed()) return cmd_t(g, k, c, trace_flag);
        if (nk->parsed()) return cmd_nk(g, k, *method);
        if (worst->parsed()) return cmd_worst(g, k);
        if (table->parsed()) return cmd_table(g, ks, pow2_even, max_s, *method);
        if (cf->parsed()) return cmd_cf(g, num, den);
        if (intervals->parsed()) return cmd_intervals(g, k, p);
    } catch (const jwa::inconsistency& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const jwa::invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
