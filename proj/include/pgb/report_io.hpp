#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pgb/bounds.hpp"

namespace pgb {

// Aggregate of a report stream: counts plus the report with the smallest
// slack (the closest call), whose name and context are kept for the summary
// line.
struct Summary {
  std::int64_t total = 0;
  std::int64_t passed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::string argmin_name;
  Context argmin_context;
};

Summary summarize(const std::vector<BoundReport>& reports);

// One JSON object per line with keys exactly name, lhs, rhs, slack,
// tolerance, satisfied, context (in that order). Non-finite numbers are
// encoded as the strings "inf", "-inf", "nan".
std::string to_jsonl_line(const BoundReport& r);
std::string summary_jsonl_line(const Summary& s);

// CSV with the same columns; the context cell holds k=v pairs joined by ';'.
std::string csv_header();
std::string to_csv_line(const BoundReport& r);
std::string summary_csv_line(const Summary& s);

// Full report stream (records then summary) in the requested format,
// terminated by a newline. format is "json" or "csv".
std::string render_reports(const std::vector<BoundReport>& reports,
                           const std::string& format);

// Writes content via a temporary file in the target directory followed by a
// rename, so interrupted runs never leave partial output behind.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace pgb
