#pragma once

// Deterministic check reports: named checks with pass/fail/skipped status and
// exact expected/actual strings. Serialization is stable apart from runtimes.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conserv/field.hpp"

namespace conserv {

enum class CheckStatus { pass, fail, skipped };

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    std::string expected, actual;
    double millis = 0.0;
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string expected = "", std::string actual = "",
             double millis = 0.0) {
        checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
                          std::move(expected), std::move(actual), millis});
    }
    void skip(std::string name, std::string why = "") {
        checks.push_back({std::move(name), CheckStatus::skipped, "", std::move(why), 0.0});
    }
    void merge(const VerificationReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    bool all_passed() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const Check& c) { return c.status == CheckStatus::fail; });
    }
    int failed_count() const {
        return int(std::count_if(checks.begin(), checks.end(),
                                 [](const Check& c) { return c.status == CheckStatus::fail; }));
    }

    void sort_by_name() {
        std::stable_sort(checks.begin(), checks.end(),
                         [](const Check& a, const Check& b) { return a.name < b.name; });
    }

    nlohmann::json to_json(bool with_runtime = true) const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j{{"name", c.name},
                             {"status", c.status == CheckStatus::pass     ? "pass"
                                        : c.status == CheckStatus::fail ? "fail"
                                                                        : "skipped"}};
            if (!c.expected.empty()) j["expected"] = c.expected;
            if (!c.actual.empty()) j["actual"] = c.actual;
            if (with_runtime) j["millis"] = c.millis;
            arr.push_back(std::move(j));
        }
        return nlohmann::json{{"checks", arr}, {"failed", failed_count()}};
    }

    void print(std::ostream& os) const {
        for (const auto& c : checks) {
            const char* tag = c.status == CheckStatus::pass     ? "PASS"
                              : c.status == CheckStatus::fail ? "FAIL"
                                                              : "SKIP";
            os << "[" << tag << "] " << c.name;
            if (c.status == CheckStatus::fail)
                os << "  expected: " << c.expected << "  actual: " << c.actual;
            os << "\n";
        }
        os << checks.size() << " checks, " << failed_count() << " failed\n";
    }
};

class Stopwatch {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }
};

} // namespace conserv
