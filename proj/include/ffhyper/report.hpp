#pragma once

#include <string>
#include <vector>

#include "ffhyper/identity.hpp"

namespace ffhyper {

// Version tag carried by every JSON document and CSV row.
inline constexpr const char* kReportSchema = "ffhyper.report/1";

// One JSON object per report; `reports_json` wraps them as
// {"schema": ..., "reports": [...]}, pretty-printed with a trailing newline.
std::string report_json(const VerificationReport& r);
std::string reports_json(const std::vector<VerificationReport>& reports);

// Flattened CSV: header line plus one row per report.
std::string csv_header();
std::string report_csv_row(const VerificationReport& r);
std::string reports_csv(const std::vector<VerificationReport>& reports);

// id q=.. backend checked/passed/skipped PASS|FAIL
std::string summary_line(const VerificationReport& r);

}  // namespace ffhyper
