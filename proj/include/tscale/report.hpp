#pragma once

#include <string>
#include <vector>

#include "tscale/conversion.hpp"
#include "tscale/corpus.hpp"
#include "tscale/integral.hpp"
#include "tscale/partition.hpp"

namespace tscale {

/// 17 significant digits; non-finite values print as `nan`/`inf`.
std::string format_g17(double x);

/// {"value":..,"method":"..","est_error":..,"evaluations":..,"truncation_residual":..}
std::string report_json(const IntegralReport& r);
/// JSON array of reports, one per line.
std::string reports_json(const std::vector<IntegralReport>& rs);

inline constexpr const char* kCsvHeader = "case_id,method,value,reference,abs_err,residual";

/// CSV rows for single-case reports, each measured against `reference`.
std::string reports_csv(const std::vector<IntegralReport>& rs, double reference, const std::string& case_id = "0",
                        bool header = true);

/// CSV rows for a corpus run plus a trailing `# summary` comment line.
std::string corpus_csv(const std::vector<CaseResult>& results);

/// `n,value,gap` rows.
std::string chain_csv(const ChainReport& chain);

}  // namespace tscale
