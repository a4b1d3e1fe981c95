#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyplab {

struct ReportRow {
    std::string check;
    double claimed = 0.0;
    double measured = 0.0;
    double margin = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    std::string config_echo;  // canonicalized config
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;

    std::size_t passes() const;
    std::size_t failures() const;
    bool all_passed() const { return failures() == 0; }
};

/// 17 significant digits, locale-independent; shared by both serializers so
/// replay output is byte-identical.
std::string format_double(double v);

std::string to_csv(const Report& r);
std::string to_json(const Report& r);

}  // namespace hyplab
