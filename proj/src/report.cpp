#include "tscale/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tscale {

namespace {

// JSON has no NaN or infinity.
std::string json_number(double x) { return std::isfinite(x) ? format_g17(x) : "null"; }

}  // namespace

std::string format_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_json(const IntegralReport& r) {
  std::string out = "{\"value\":" + json_number(r.value);
  out += ",\"method\":\"" + std::string(method_name(r.method)) + "\"";
  out += ",\"est_error\":" + json_number(r.est_error);
  out += ",\"evaluations\":" + std::to_string(r.evaluations);
  out += ",\"truncation_residual\":" + json_number(r.truncation_residual) + "}";
  return out;
}

std::string reports_json(const std::vector<IntegralReport>& rs) {
  if (rs.size() == 1) return report_json(rs.front()) + "\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out += "  " + report_json(rs[i]) + (i + 1 < rs.size() ? ",\n" : "\n");
  }
  return out + "]\n";
}

std::string reports_csv(const std::vector<IntegralReport>& rs, double reference, const std::string& case_id,
                        bool header) {
  std::string out = header ? std::string(kCsvHeader) + "\n" : "";
  for (const auto& r : rs) {
    out += case_id + "," + std::string(method_name(r.method)) + "," + format_g17(r.value) + "," +
           format_g17(reference) + "," + format_g17(std::fabs(r.value - reference)) + "," +
           format_g17(r.truncation_residual) + "\n";
  }
  return out;
}

std::string corpus_csv(const std::vector<CaseResult>& results) {
  std::string out = std::string(kCsvHeader) + "\n";
  double max_err = 0.0;
  double max_line = 0.0;
  std::size_t failures = 0;
  for (const auto& c : results) {
    const std::string id = std::to_string(c.id);
    if (!c.error.empty()) {
      out += "# case " + id + " error: " + c.error + "\n";
      ++failures;
      continue;
    }
    auto row = [&](const char* method, double value, double reference) {
      out += id + "," + method + "," + format_g17(value) + "," + format_g17(reference) + "," +
             format_g17(std::fabs(value - reference)) + "," + format_g17(c.residual) + "\n";
    };
    row("riemann_sum", c.riemann, c.riemann);
    row("by_parts", c.by_parts, c.riemann);
    row("convert_superscale", c.superscale, c.riemann);
    row("convert_real", c.real, c.riemann);
    row("convert_superscale_line", c.superscale_real, c.real);
    max_err = std::max(max_err, c.max_conversion_error());
    max_line = std::max(max_line, c.real_vs_superscale());
    if (!c.pass) ++failures;
  }
  out += "# summary cases=" + std::to_string(results.size()) + " failures=" + std::to_string(failures) +
         " max_abs_err=" + format_g17(max_err) + " max_real_vs_superscale=" + format_g17(max_line) + "\n";
  return out;
}

std::string chain_csv(const ChainReport& chain) {
  std::string out = "n,value,gap\n";
  for (const auto& r : chain.rows) {
    out += std::to_string(r.n) + "," + format_g17(r.value) + "," + format_g17(r.gap) + "\n";
  }
  out += "# limit=" + format_g17(chain.limit) + " envelope_violations=" + std::to_string(chain.envelope_violations) +
         "/" + std::to_string(chain.envelope_samples) + "\n";
  return out;
}

}  // namespace tscale
