#include "jwa/record.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace jwa {

void OutputRecord::input(const std::string& key, const std::string& value) {
    inputs.emplace_back(key, value);
}

void OutputRecord::input(const std::string& key, std::int64_t value) {
    inputs.emplace_back(key, std::to_string(value));
}

void OutputRecord::result(const std::string& key, const std::string& value) {
    results.push_back({key, Value{false, value, {}}});
}

void OutputRecord::result(const std::string& key, std::int64_t value) {
    result(key, std::to_string(value));
}

void OutputRecord::result(const std::string& key, bool value) {
    result(key, std::string(value ? "true" : "false"));
}

void OutputRecord::result_list(const std::string& key, const std::vector<std::int64_t>& values) {
    Value v;
    v.is_list = true;
    for (std::int64_t x : values) v.items.push_back(std::to_string(x));
    results.push_back({key, std::move(v)});
}

void OutputRecord::result_list(const std::string& key, const std::vector<std::string>& values) {
    Value v;
    v.is_list = true;
    v.items = values;
    results.push_back({key, std::move(v)});
}

std::string OutputRecord::to_tsv() const {
    std::ostringstream os;
    os << "# " << command;
    for (const auto& [key, value] : inputs) os << ' ' << key << '=' << value;
    os << " schema=" << schema_version << '\n';
    for (size_t i = 0; i < results.size(); ++i) {
        if (i) os << '\t';
        os << results[i].first;
    }
    os << '\n';
    for (size_t i = 0; i < results.size(); ++i) {
        if (i) os << '\t';
        const Value& v = results[i].second;
        if (v.is_list) {
            for (size_t j = 0; j < v.items.size(); ++j) {
                if (j) os << ',';
                os << v.items[j];
            }
        } else {
            os << v.scalar;
        }
    }
    os << '\n';
    if (has_steps) {
        os << "i\tq\tn\td\n";
        for (const StepRow& s : steps) {
            os << s.i << '\t';
            if (s.q) os << *s.q;
            os << '\t' << s.n << '\t' << s.d << '\n';
        }
    }
    return os.str();
}

namespace {

// plain decimal integers become JSON numbers when they fit, strings otherwise
nlohmann::ordered_json scalar_to_json(const std::string& s) {
    if (!s.empty() && s != "-" && s.find_first_not_of("-0123456789") == std::string::npos) {
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(s.c_str(), &end, 10);
        if (errno == 0 && end && *end == '\0') return v;
    }
    if (s == "true") return true;
    if (s == "false") return false;
    return s;
}

}  // namespace

std::string OutputRecord::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [key, value] : inputs) in[key] = scalar_to_json(value);
    j["inputs"] = in;
    nlohmann::ordered_json res = nlohmann::ordered_json::object();
    for (const auto& [key, value] : results) {
        if (value.is_list) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const std::string& item : value.items) arr.push_back(scalar_to_json(item));
            res[key] = arr;
        } else {
            res[key] = scalar_to_json(value.scalar);
        }
    }
    j["results"] = res;
    if (has_steps) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const StepRow& s : steps) {
            nlohmann::ordered_json row = nlohmann::ordered_json::object();
            row["i"] = s.i;
            if (s.q) row["q"] = *s.q;
            row["n"] = s.n;
            row["d"] = s.d;
            arr.push_back(row);
        }
        j["steps"] = arr;
    }
    return j.dump() + "\n";
}

std::string OutputRecord::render(OutputFormat f) const {
    return f == OutputFormat::tsv ? to_tsv() : to_json();
}

}  // namespace jwa
