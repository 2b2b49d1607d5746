#pragma once

#include "rdb/obliterate.hpp"
#include "rdb/sharpen.hpp"
#include "rdb/sporadic.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rdb {

/// {header, stats, steps}; every big integer is a decimal string and types
/// use the "m2,m3,..." text form.
std::string certificate_to_json(const BoundCertificate& cert, int indent = 2);
/// Inverse of certificate_to_json. Throws ParseError on malformed input.
BoundCertificate certificate_from_json(std::string_view text);

std::string stats_to_json(const EvalStats& stats, int indent = -1);
void write_stats_text(std::ostream& out, const EvalStats& stats);

std::string sharpen_report_to_json(const SharpenReport& report, int indent = 2);
std::string sweep_to_json(const SweepResult& sweep, int indent = 2);
/// l | bound | largest product | steps | steps to quadric | candidate
void write_sharpen_table(std::ostream& out, const SharpenReport& report);
void write_sharpen_csv(std::ostream& out, const SharpenReport& report);

std::string verdicts_to_json(const std::vector<GroupVerdict>& verdicts, int indent = 2);

}  // namespace rdb
