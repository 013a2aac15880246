// End-to-end checks of the command-line surface: exit codes, TSV/JSON
// parity, determinism, and the cache file.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(JWA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) nl = s.size();
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("reduce with trace prints the full step table") {
    RunResult r = run_cli("reduce --k 1024 --x 633 --y 1 --trace");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() >= 3);
    CHECK(ls[1] == "c\tn\td\tt\tverified");
    CHECK(ls[2] == "633\t19\t-21\t7\ttrue");
    // step rows: header + i = -1..7
    CHECK(ls[3] == "i\tq\tn\td");
    REQUIRE(ls.size() == 4 + 9);
    CHECK(ls[4] == "-1\t\t1024\t0");
    CHECK(ls[5] == "0\t\t633\t1");
    CHECK(ls[12] == "7\t1\t19\t-21");
}

TEST_CASE("reduce rejects non-coprime input with exit 2") {
    RunResult r = run_cli("reduce --k 16 --x 4 --y 2");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("gcd") != std::string::npos);
}

TEST_CASE("reduce with x = y returns the unit pair") {
    RunResult r = run_cli("reduce --k 1024 --x 633 --y 633 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["n"] == 1);
    CHECK(j["results"]["d"] == 1);
    CHECK(j["results"]["t"] == 0);
}

TEST_CASE("t subcommand on the pinned example") {
    RunResult r = run_cli("t --k 15849 --c 11468 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["t"] == 10);
}

TEST_CASE("nk both agrees with itself and runs deterministically") {
    RunResult a = run_cli("nk --k 1024 --method both --format json");
    CHECK(a.exit_code == 0);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["results"]["m"] == 7);
    CHECK(j["results"]["N"] == 7);
    CHECK(j["results"]["complete"] == true);

    RunResult b = run_cli("nk --k 1024 --method both --format json");
    CHECK(a.out == b.out);
}

TEST_CASE("nk analytic on the pinned values") {
    RunResult r = run_cli("nk --k 4096 --method analytic --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["m"] == 9);
    CHECK(j["results"]["N"] == 8);

    RunResult r2 = run_cli("nk --k 15849 --method analytic --format json");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["results"]["N"] == 10);
    REQUIRE(j2["results"]["witnesses"].is_array());
    CHECK(j2["results"]["witnesses"][0] == 11468);
}

TEST_CASE("nk brute above the ceiling exits 2") {
    RunResult r = run_cli("nk --k 1048576 --method brute --ceiling 65536");
    CHECK(r.exit_code == 2);
}

TEST_CASE("worst on the pinned values") {
    RunResult r = run_cli("worst --k 1024 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["complete"] == true);
    bool found = false;
    for (const auto& w : j["results"]["witnesses"])
        if (w == 633) found = true;
    CHECK(found);

    RunResult r9 = run_cli("worst --k 9 --format json");
    auto j9 = nlohmann::json::parse(r9.out);
    CHECK(j9["results"]["N"] == 2);
    CHECK(j9["results"]["witnesses"][0] == 5);
}

TEST_CASE("table with explicit k list, both methods") {
    RunResult r = run_cli("table --k 16 --k 64 --method both");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "k\tm\tN\tmethod\tcomplete\tfallback_used\twitness_count\twitnesses");
    CHECK(ls[2].rfind("16\t3\t2\tboth\ttrue\tfalse", 0) == 0);
    CHECK(ls[3].rfind("64\t5\t4\tboth\ttrue\tfalse", 0) == 0);
}

TEST_CASE("table with an empty spec emits no rows and exits 0") {
    RunResult r = run_cli("table");
    CHECK(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 2);  // comment + header only
}

TEST_CASE("table json rows carry the same values as tsv") {
    RunResult t = run_cli("table --k 16 --method analytic");
    RunResult j = run_cli("table --k 16 --method analytic --format json");
    CHECK(t.exit_code == 0);
    CHECK(j.exit_code == 0);
    auto obj = nlohmann::json::parse(j.out);
    auto ls = lines_of(t.out);
    REQUIRE(ls.size() == 3);
    CHECK(obj["results"]["k"] == 16);
    CHECK(obj["results"]["m"] == 3);
    CHECK(obj["results"]["N"] == 2);
    CHECK(ls[2].rfind("16\t3\t2\tanalytic", 0) == 0);
}

TEST_CASE("table cache: second run hits and file stays well-formed") {
    std::string path = "cli_cache_test.tsv";
    std::remove(path.c_str());
    RunResult a = run_cli("table --k 1024 --method brute --cache " + path);
    CHECK(a.exit_code == 0);
    RunResult b = run_cli("table --k 1024 --method brute --cache " + path);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);

    FILE* f = fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[4096];
    int rows = 0;
    while (fgets(line, sizeof line, f)) ++rows;
    fclose(f);
    CHECK(rows == 1);  // the second run reused the cached row
    std::remove(path.c_str());
}

TEST_CASE("cf on the pinned values") {
    RunResult r = run_cli("cf --num 1024 --den 633 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto q = j["results"]["quotients"];
    REQUIRE(q.size() == 10);
    for (int i = 0; i < 9; ++i) CHECK(q[i] == 1);
    CHECK(q[9] == 18);
    CHECK(j["results"]["ones_prefix"] == 9);
}

TEST_CASE("intervals on the pinned values") {
    RunResult r = run_cli("intervals --k 15849 --p 10 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["member_count"] == 1);
    CHECK(j["results"]["members"][0] == 9795);
    CHECK(j["results"]["coprime_count"] == 0);
    CHECK(j["results"]["coprime_members"].empty());

    RunResult r16 = run_cli("intervals --k 16 --p 1 --format json");
    auto j16 = nlohmann::json::parse(r16.out);
    CHECK(j16["results"]["member_count"] == 7);
    CHECK(j16["results"]["members"][0] == 9);
    CHECK(j16["results"]["members"][6] == 15);
    std::vector<int> cop;
    for (const auto& c : j16["results"]["coprime_members"]) cop.push_back(c.get<int>());
    CHECK(cop == std::vector<int>{9, 11, 13, 15});

    RunResult bad = run_cli("intervals --k 16 --p 0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("witness cap truncates the list but reports the full count") {
    RunResult r = run_cli("worst --k 90 --witness-cap 2 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"]["witnesses"].size() == 2);
    CHECK(j["results"]["witnesses"][0] == 53);
    CHECK(j["results"]["witness_count"] == 5);
}
