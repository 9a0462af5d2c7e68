#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace parlives::app {

std::optional<Format> format_from_string(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    return std::nullopt;
}

std::string_view to_string(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "text";
    }
    return "?";
}

namespace {

std::string_view to_string(Comparison c) { return c == Comparison::within ? "within" : "at_least"; }

std::string precise(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - std::min(width, s.size()), ' '); }

void write_table(std::ostringstream& os, const Table& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "  " : "") << pad(cells[i], width[i]);
        os << '\n';
    };
    line(t.header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& row : t.rows) line(row);
}

}  // namespace

Check make_check(std::string name, double value, double expected, double tolerance, Comparison comparison) {
    bool pass = false;
    if (std::isfinite(value)) {
        pass = comparison == Comparison::within ? std::abs(value - expected) <= tolerance
                                                : value >= expected - tolerance;
    }
    return Check{std::move(name), value, expected, tolerance, comparison, pass};
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks) {
        c.name = prefix + "." + c.name;
        checks.push_back(std::move(c));
    }
    if (!other.data.empty()) data[prefix] = other.data;
}

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> Report::failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.pass) out.push_back(c.name);
    return out;
}

std::string fmt_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string render(const Report& r, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::json: {
            json checks = json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"name", c.name},
                                  {"value", c.value},
                                  {"expected", c.expected},
                                  {"tolerance", c.tolerance},
                                  {"comparison", to_string(c.comparison)},
                                  {"pass", c.pass}});
            json out = {{"schema_version", r.schema_version},
                        {"command", r.command},
                        {"config", r.config},
                        {"checks", std::move(checks)},
                        {"pass", r.pass()},
                        {"data", r.data}};
            if (r.table) {
                json rows = json::array();
                for (const auto& row : r.table->rows) {
                    json obj = json::object();
                    for (std::size_t i = 0; i < row.size() && i < r.table->header.size(); ++i)
                        obj[r.table->header[i]] = row[i];
                    rows.push_back(std::move(obj));
                }
                out["table"] = std::move(rows);
            }
            if (!r.notes.empty()) out["notes"] = r.notes;
            os << out.dump(2) << '\n';
            break;
        }
        case Format::csv: {
            os << "name,value,expected,tolerance,comparison,pass\n";
            for (const auto& c : r.checks)
                os << c.name << ',' << precise(c.value) << ',' << precise(c.expected) << ',' << precise(c.tolerance)
                   << ',' << to_string(c.comparison) << ',' << (c.pass ? "true" : "false") << '\n';
            break;
        }
        case Format::text: {
            os << "command: " << r.command << "  (schema " << r.schema_version << ")\n\n";
            for (const auto& n : r.notes) os << n << '\n';
            if (!r.notes.empty()) os << '\n';
            if (r.table) {
                write_table(os, *r.table);
                os << '\n';
            }
            Table checks{{"check", "value", "expected", "tolerance", "pass"}, {}};
            for (const auto& c : r.checks) {
                char tol[64];
                std::snprintf(tol, sizeof tol, "%s%.3g", c.comparison == Comparison::at_least ? ">= -" : "", c.tolerance);
                checks.rows.push_back(
                    {c.name, fmt_number(c.value, 9), fmt_number(c.expected, 9), tol, c.pass ? "PASS" : "FAIL"});
            }
            write_table(os, checks);
            os << "\noverall: " << (r.pass() ? "PASS" : "FAIL") << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace parlives::app
