#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opsim/config.hpp"
#include "opsim/planner.hpp"
#include "opsim/streaming_stats.hpp"

namespace opsim {

/// A replicated parameter sweep over (fa, nd, adjust_error, cutoff_time).
/// Cells enumerate with fa outermost and cutoff innermost; that order is
/// part of the seed-derivation contract and must not change.
struct ScanSpec {
  std::vector<double> fa_values;
  std::vector<int> nd_values;
  std::vector<bool> adjust_error_values;
  std::vector<bool> cutoff_values;
  int replications = 30;
  std::uint64_t base_seed = 42;
  RunConfig base;    // physics, plan and budget shared by every cell
  std::string name = "scan";

  std::size_t cell_count() const {
    return fa_values.size() * nd_values.size() * adjust_error_values.size() *
           cutoff_values.size();
  }
};

/// Scan spec whose sweep lists come straight from the config's scan.* keys.
ScanSpec scan_spec_from_config(const RunConfig& config);

/// Stable, documented seed mixing: splitmix64(splitmix64(base) ^ (cell << 32 | rep)).
/// Injective for cell and replication below 2^32 because splitmix64 is a
/// bijection and the packed tuple is unique.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t cell_index,
                          std::uint64_t replication);

/// Per-(cell, sample) aggregate over replications.
struct SampleAggregate {
  std::string sample_id;
  double pq = 1.0;
  StatAccumulator events;
  StatAccumulator ticks;
  StatAccumulator final_se;        // finite observations only
  std::uint64_t se_undefined = 0;  // replications whose final SE was undefined
  std::uint64_t reached_te = 0;
  std::uint64_t count = 0;

  /// +infinity as soon as any replication ended with an undefined SE.
  double mean_final_se() const;
};

struct CellResult {
  double fa = 0.1;
  int nd = 5;
  bool adjust_error = false;
  bool cutoff_time = false;
  std::vector<SampleAggregate> samples;      // plan order (descending pq)
  StatAccumulator samples_with_data;         // per-replication count of samples with events
  std::uint64_t all_reached_te = 0;          // replications where every sample reached target
  std::uint64_t replications = 0;
};

struct ScanResult {
  ScanSpec spec;  // provenance snapshot
  std::vector<CellResult> cells;
};

/// Runs the full cartesian product x replications. Each run owns a seed
/// derived from (base_seed, cell, replication); results are reduced in a
/// fixed order, so any thread count yields the identical ScanResult.
/// threads = 0 means hardware concurrency.
ScanResult execute_scan(const ScanSpec& spec, int threads = 1);

/// Order-independent reduction of one cell's replication logs (logs are
/// sorted by seed before accumulation so permutations aggregate
/// bit-identically). All logs must come from the same plan.
CellResult aggregate(const std::vector<ExperimentLog>& logs, const ExperimentPlan& plan);

}  // namespace opsim
