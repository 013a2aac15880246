#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jwa {

enum class OutputFormat { tsv, json };

// Self-describing result record. Inputs are echoed, numeric fields print in
// plain decimal, and field order is fixed at insertion so serialization is
// byte-deterministic. TSV renders a `# command key=value...` comment, a header
// line and one value line (lists joined by commas); JSON renders one object
// per record on a single line.
struct OutputRecord {
    struct Value {
        bool is_list = false;
        std::string scalar;
        std::vector<std::string> items;
    };

    struct StepRow {
        int i = 0;
        std::optional<std::int64_t> q;  // undefined for i in {-1, 0}
        std::int64_t n = 0;
        std::int64_t d = 0;
    };

    std::string schema_version = "1";
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, Value>> results;
    bool has_steps = false;
    std::vector<StepRow> steps;

    void input(const std::string& key, const std::string& value);
    void input(const std::string& key, std::int64_t value);
    void result(const std::string& key, const std::string& value);
    void result(const std::string& key, std::int64_t value);
    void result(const std::string& key, bool value);
    void result_list(const std::string& key, const std::vector<std::int64_t>& values);
    void result_list(const std::string& key, const std::vector<std::string>& values);

    std::string to_tsv() const;
    std::string to_json() const;
    std::string render(OutputFormat f) const;
};

}  // namespace jwa
