#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace parlives::app {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv, text };
std::optional<Format> format_from_string(std::string_view s);
std::string_view to_string(Format f);

enum class Comparison {
    within,   // |value - expected| <= tolerance
    at_least  // value >= expected - tolerance
};

struct Check {
    std::string name;
    double value;
    double expected;
    double tolerance;
    Comparison comparison;
    bool pass;
};

Check make_check(std::string name, double value, double expected, double tolerance,
                 Comparison comparison = Comparison::within);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    int schema_version = kSchemaVersion;
    std::string command;
    json config = json::object();
    std::vector<Check> checks;
    json data = json::object();
    std::optional<Table> table;
    std::vector<std::string> notes;  // free text shown before the tables

    void add(Check c) { checks.push_back(std::move(c)); }
    /// Appends `other`'s checks as "<prefix>.<name>" and its data under `prefix`.
    void merge(const Report& other, const std::string& prefix);
    bool pass() const;
    std::vector<std::string> failing() const;
};

std::string render(const Report& report, Format format);

/// Fixed-precision text for tables.
std::string fmt_number(double v, int precision = 6);

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace parlives::app
