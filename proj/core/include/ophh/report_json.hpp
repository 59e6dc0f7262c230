#pragma once

#include <filesystem>
#include <string>

#include "ophh/inequality.hpp"
#include "ophh/trial_suite.hpp"

namespace ophh {

/// Report JSON for a suite run:
///   {"theorem", "seed", "trials", "dim", "min_slack", "tolerance",
///    "verdict", "witnesses": [{"trial","lambda","min_eig","A","B","x"}], ...}
/// Identical config and seed produce byte-identical text; the wall-clock
/// timestamp lives in a separate "meta" block excluded from that contract
/// (pass with_meta = false to drop it).
std::string suite_result_to_json(const SuiteResult& result, bool with_meta = true);

/// Same schema for a single fixed-input check (reproductions).
std::string inequality_report_to_json(const InequalityReport& report, bool with_meta = true);

/// Write via temp file + rename so readers never observe a partial report.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace ophh
