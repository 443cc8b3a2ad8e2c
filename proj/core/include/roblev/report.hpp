#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "roblev/robust_leverage.hpp"

namespace roblev {

enum class ReportFormat { csv, json };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// 10 significant digits, printf %.10g.
std::string format_number(double v);

// Metadata as leading "# key: value" lines, then
// obs,robust_hat,robust_rd,classical_hat,classical_md,mcd_weight,flagged
void write_csv(const LeverageReport& report, std::ostream& out);

// {"meta": {...}, "observations": [{...}, ...]} with the CSV field names and
// the same number formatting.
void write_json(const LeverageReport& report, std::ostream& out);

void write_report(const LeverageReport& report, ReportFormat format, std::ostream& out);

// Write to `dest`, or to `fallback` when dest is empty or "-". Throws
// OutputError if the destination cannot be opened or written.
void emit_report(const LeverageReport& report, ReportFormat format, const std::string& dest,
                 std::ostream& fallback);

}  // namespace roblev
