#include "hyplab/report.hpp"

#include <cstdio>

namespace hyplab {

std::size_t Report::passes() const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.pass) ++n;
    return n;
}

std::size_t Report::failures() const { return rows.size() - passes(); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_csv(const Report& r) {
    std::string out = "check,claimed,measured,margin,pass\n";
    for (const auto& row : r.rows) {
        out += csv_escape(row.check);
        out += ',';
        out += format_double(row.claimed);
        out += ',';
        out += format_double(row.measured);
        out += ',';
        out += format_double(row.margin);
        out += ',';
        out += row.pass ? "true" : "false";
        out += '\n';
    }
    out += "# command=" + r.command + " seed=" + std::to_string(r.seed) +
           " passes=" + std::to_string(r.passes()) + " failures=" + std::to_string(r.failures()) +
           "\n";
    return out;
}

std::string to_json(const Report& r) {
    std::string out = "{\n";
    out += "  \"command\": \"" + json_escape(r.command) + "\",\n";
    out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    out += "  \"config\": \"" + json_escape(r.config_echo) + "\",\n";
    out += "  \"rows\": [\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += "    {\"check\": \"" + json_escape(row.check) + "\", \"claimed\": " +
               format_double(row.claimed) + ", \"measured\": " + format_double(row.measured) +
               ", \"margin\": " + format_double(row.margin) +
               ", \"pass\": " + (row.pass ? "true" : "false") + "}";
        if (i + 1 < r.rows.size()) out += ',';
        out += '\n';
    }
    out += "  ],\n";
    out += "  \"passes\": " + std::to_string(r.passes()) + ",\n";
    out += "  \"failures\": " + std::to_string(r.failures()) + "\n";
    out += "}\n";
    return out;
}

}  // namespace hyplab
