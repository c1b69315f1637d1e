#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opsim/scan.hpp"

namespace opsim {

/// One row of the frozen runs.csv schema (schema_version 1).
struct RunsCsvRow {
  double fa = 0.1;
  int nd = 5;
  bool adjust_error = false;
  bool cutoff = false;
  std::string sample_id;
  double pq = 1.0;
  double mean_events = 0.0;
  double std_events = 0.0;
  double mean_ticks = 0.0;
  double mean_final_se = 0.0;
  double frac_reached_te = 0.0;
  std::uint64_t replications = 0;
};

inline constexpr std::string_view kRunsCsvHeader =
    "fa,nd,adjust_error,cutoff,sample_id,pq,mean_events,std_events,mean_ticks,"
    "mean_final_se,frac_reached_te,replications";

inline constexpr int kCsvSchemaVersion = 1;

/// Flattens a scan result into rows sorted by (fa, nd, adjust, cutoff,
/// descending pq).
std::vector<RunsCsvRow> result_rows(const ScanResult& result);

/// Full runs.csv document (header + one row per cell-sample), deterministic
/// bytes for a given result.
std::string runs_csv(const ScanResult& result);

/// Per-cell rollup: totals across samples plus coverage statistics.
std::string summary_csv(const ScanResult& result);

/// Parses a runs.csv document back into rows (used by plot re-rendering).
/// Throws IoError on malformed input.
std::vector<RunsCsvRow> parse_runs_csv(std::string_view text);

}  // namespace opsim
