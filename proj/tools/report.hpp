#ifndef MAHLERLAB_TOOLS_REPORT_HPP
#define MAHLERLAB_TOOLS_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "mahlerlab/registry.hpp"

namespace mahlerlab::cli {

enum class ReportFormat { text, json, csv };

ReportFormat parse_report_format(const std::string& name);

struct ReportOptions {
  ReportFormat format = ReportFormat::text;
  /// wall_ms is written only when set; otherwise reports are reproducible
  /// byte for byte.
  bool timing = false;
};

inline constexpr const char* kReportSchema = "v1";

/// Digits shown for lhs/rhs: min(floor(P log10 2), 40).
int report_digits(Precision p);

void write_report(std::ostream& out, const std::vector<CheckResult>& results, const ReportOptions& options);

}  // namespace mahlerlab::cli

#endif  // MAHLERLAB_TOOLS_REPORT_HPP
