#include "pgb/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pgb/errors.hpp"

namespace pgb {

namespace {

using ojson = nlohmann::ordered_json;

// Doubles keep their shortest round-trip decimal form; non-finite values
// become the strings "inf", "-inf", "nan" so every line stays valid JSON.
ojson encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson encode_context_value(const ContextValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return *u;
  if (const auto* d = std::get_if<double>(&v)) return encode_double(*d);
  return std::get<std::string>(v);
}

ojson encode_context(const Context& ctx) {
  ojson j = ojson::object();
  for (const auto& [key, value] : ctx) j[key] = encode_context_value(value);
  return j;
}

std::string scalar_text(const ojson& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string context_text(const Context& ctx) {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : ctx) {
    if (!first) out += ';';
    first = false;
    out += key;
    out += '=';
    out += scalar_text(encode_context_value(value));
  }
  return out;
}

// RFC-4180 style quoting: the cell is always wrapped in double quotes with
// inner quotes doubled, since context values may contain commas or '='.
std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string double_cell(double v) { return scalar_text(encode_double(v)); }

}  // namespace

Summary summarize(const std::vector<BoundReport>& reports) {
  Summary s;
  s.total = static_cast<std::int64_t>(reports.size());
  bool have_min = false;
  for (const BoundReport& r : reports) {
    if (r.satisfied) ++s.passed;
    if (!have_min || r.slack < s.min_slack) {
      have_min = true;
      s.min_slack = r.slack;
      s.argmin_name = r.name;
      s.argmin_context = r.context;
    }
  }
  return s;
}

std::string to_jsonl_line(const BoundReport& r) {
  ojson j;
  j["name"] = r.name;
  j["lhs"] = encode_double(r.lhs);
  j["rhs"] = encode_double(r.rhs);
  j["slack"] = encode_double(r.slack);
  j["tolerance"] = encode_double(r.tolerance);
  j["satisfied"] = r.satisfied;
  j["context"] = encode_context(r.context);
  return j.dump();
}

std::string summary_jsonl_line(const Summary& s) {
  ojson inner;
  inner["total"] = s.total;
  inner["passed"] = s.passed;
  inner["min_slack"] = encode_double(s.min_slack);
  inner["argmin_name"] = s.argmin_name;
  inner["argmin_context"] = encode_context(s.argmin_context);
  ojson j;
  j["summary"] = inner;
  return j.dump();
}

std::string csv_header() {
  return "name,lhs,rhs,slack,tolerance,satisfied,context";
}

std::string to_csv_line(const BoundReport& r) {
  std::string line = csv_quote(r.name);
  line += ',';
  line += double_cell(r.lhs);
  line += ',';
  line += double_cell(r.rhs);
  line += ',';
  line += double_cell(r.slack);
  line += ',';
  line += double_cell(r.tolerance);
  line += ',';
  line += r.satisfied ? "true" : "false";
  line += ',';
  line += csv_quote(context_text(r.context));
  return line;
}

std::string summary_csv_line(const Summary& s) {
  std::string ctx = "total=" + std::to_string(s.total) +
                    ";passed=" + std::to_string(s.passed);
  if (!s.argmin_name.empty()) {
    ctx += ";argmin_name=" + s.argmin_name;
    const std::string rest = context_text(s.argmin_context);
    if (!rest.empty()) ctx += ';' + rest;
  }
  std::string line = "\"summary\",,,";
  line += double_cell(s.min_slack);
  line += ",,";
  line += (s.passed == s.total) ? "true" : "false";
  line += ',';
  line += csv_quote(ctx);
  return line;
}

std::string render_reports(const std::vector<BoundReport>& reports,
                           const std::string& format) {
  if (format != "json" && format != "csv") {
    throw BadParams("unknown report format: " + format);
  }
  std::string out;
  if (format == "csv") {
    out += csv_header();
    out += '\n';
  }
  for (const BoundReport& r : reports) {
    out += (format == "csv") ? to_csv_line(r) : to_jsonl_line(r);
    out += '\n';
  }
  const Summary s = summarize(reports);
  out += (format == "csv") ? summary_csv_line(s) : summary_jsonl_line(s);
  out += '\n';
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into place at " + path);
  }
}

}  // namespace pgb
