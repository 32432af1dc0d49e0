#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pmtlab/pipeline.hpp"

namespace pmt {

/// CSV column order of a report table.
const std::vector<std::string>& csv_columns();

/// One header line plus one line per row, 17 significant digits; solve
/// fields of unsolved rows are empty.
std::string report_csv(const MassReport& report);

nlohmann::json report_json(const MassReport& report);
MassReport report_from_json(const nlohmann::json& doc);

/// Per-row radial profile "r,avg_w_r" for a solved row.
std::string profile_csv(const Profile& profile);

enum class ReportFormat { csv, json, both };

/// Writes report.csv and/or report.json into `dir` (created if missing) and,
/// with `profiles`, profile_<index>.csv for each solved row. Returns the
/// written paths. I/O failures are rejected with the path.
std::vector<std::string> emit_report(const MassReport& report, const std::string& dir, ReportFormat format,
                                     bool profiles);

MassReport read_report(const std::string& path);

}  // namespace pmt
