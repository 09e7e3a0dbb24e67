#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "setvar/common.hpp"

namespace setvar {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Suite reports: one record per check, pass evaluated at emission time.
// Emission appends to the target file; field order and float formatting
// (17 significant digits) are fixed so reruns are byte-identical.
// ---------------------------------------------------------------------------

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;  // bound or expected value the check compares to
    bool pass = false;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    void add(const std::string& name, double measured, double expected,
             bool pass) {
        checks.push_back({name, measured, expected, pass});
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

}  // namespace detail

inline std::string report_to_json(const Report& r) {
    std::string s = "{\"suite\":\"" + detail::json_escape(r.suite) +
                    "\",\"version\":\"" + kVersion +
                    "\",\"seed\":" + std::to_string(r.seed) + ",\"checks\":[";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        if (i) s += ",";
        s += "{\"name\":\"" + detail::json_escape(c.name) +
             "\",\"measured\":" + fmt17(c.measured) +
             ",\"expected\":" + fmt17(c.expected) +
             ",\"pass\":" + (c.pass ? "true" : "false") + "}";
    }
    s += "],\"all_pass\":";
    s += r.all_pass() ? "true" : "false";
    s += "}\n";
    return s;
}

inline std::string report_to_csv(const Report& r) {
    std::string s = "name,measured,expected,pass\n";
    for (const auto& c : r.checks)
        s += c.name + "," + fmt17(c.measured) + "," + fmt17(c.expected) + "," +
             (c.pass ? "true" : "false") + "\n";
    return s;
}

/// Append the serialized report to `file` (reports are append-only); returns
/// the emitted string.
inline std::string emit_report(const Report& r, const std::string& format,
                               const std::string& file) {
    const std::string body =
        format == "csv" ? report_to_csv(r) : report_to_json(r);
    if (!file.empty()) {
        std::ofstream os(file, std::ios::app);
        if (!os) throw io_error("cannot open report file: " + file);
        os << body;
        if (!os) throw io_error("report write failed: " + file);
    }
    return body;
}

}  // namespace setvar
