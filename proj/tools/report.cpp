#include "report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "mahlerlab/error.hpp"

namespace mahlerlab::cli {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw InvalidArgument("unknown report format '" + name + "' (expected text, json or csv)");
}

int report_digits(Precision p) { return std::min(40, static_cast<int>(static_cast<double>(p.bits) * 0.30103)); }

namespace {

std::string sci(const Real& x) { return x.to_string(3); }

std::string deviation_text(const CheckResult& r) { return r.deviation ? sci(*r.deviation) : "n/a"; }

void write_text(std::ostream& out, const std::vector<CheckResult>& results, const ReportOptions& options) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.id.size());
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    std::string id = r.id;
    id.resize(width, ' ');
    out << (r.pass ? "PASS  " : "FAIL  ") << id << "  dev " << deviation_text(r) << "  tol " << sci(r.tolerance) << "  ["
        << to_string(r.kind) << "]";
    if (options.timing) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.1f", r.wall_ms);
      out << "  " << ms << " ms";
    }
    out << '\n';
    if (!r.lhs.empty()) out << "      lhs " << r.lhs << '\n';
    if (!r.rhs.empty()) out << "      rhs " << r.rhs << '\n';
    if (!r.note.empty()) out << "      note " << r.note << '\n';
  }
  out << results.size() << " checks, " << passed << " passed, " << results.size() - passed << " failed\n";
}

nlohmann::ordered_json to_json(const CheckResult& r, const ReportOptions& options) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["id"] = r.id;
  j["kind"] = to_string(r.kind);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  if (r.deviation) {
    j["deviation"] = r.deviation->to_double();
  } else {
    j["deviation"] = nullptr;
  }
  j["tolerance"] = r.tolerance.to_double();
  j["pass"] = r.pass;
  if (options.timing) {
    j["wall_ms"] = r.wall_ms;
  } else {
    j["wall_ms"] = nullptr;
  }
  j["evals"] = r.evaluations;
  j["seed"] = r.seed;
  j["precision"] = r.precision.bits;
  j["note"] = r.note;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_csv(std::ostream& out, const std::vector<CheckResult>& results, const ReportOptions& options) {
  out << "id,kind,pass,deviation,tolerance,lhs,rhs,wall_ms,evals,seed,precision,note\n";
  for (const auto& r : results) {
    out << csv_field(r.id) << ',' << to_string(r.kind) << ',' << (r.pass ? "true" : "false") << ','
        << (r.deviation ? sci(*r.deviation) : "") << ',' << sci(r.tolerance) << ',' << csv_field(r.lhs) << ','
        << csv_field(r.rhs) << ',';
    if (options.timing) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.1f", r.wall_ms);
      out << ms;
    }
    out << ',' << r.evaluations << ',' << r.seed << ',' << r.precision.bits << ',' << csv_field(r.note) << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, const std::vector<CheckResult>& results, const ReportOptions& options) {
  switch (options.format) {
    case ReportFormat::text:
      write_text(out, results, options);
      break;
    case ReportFormat::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : results) arr.push_back(to_json(r, options));
      out << arr.dump(2) << '\n';
      break;
    }
    case ReportFormat::csv:
      write_csv(out, results, options);
      break;
  }
}

}  // namespace mahlerlab::cli
