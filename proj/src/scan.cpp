#include "opsim/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <thread>

#include "opsim/random.hpp"

namespace opsim {

ScanSpec scan_spec_from_config(const RunConfig& config) {
  ScanSpec spec;
  spec.fa_values = config.fa_values;
  spec.nd_values = config.nd_values;
  spec.adjust_error_values = config.adjust_error_values;
  spec.cutoff_values = config.cutoff_values;
  spec.replications = config.replications;
  spec.base_seed = config.base_seed;
  spec.base = config;
  return spec;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t cell_index,
                          std::uint64_t replication) {
  assert(cell_index < (1ull << 32) && replication < (1ull << 32));
  return splitmix64(splitmix64(base_seed) ^ ((cell_index << 32) | replication));
}

namespace {

struct CellParams {
  double fa;
  int nd;
  bool adjust_error;
  bool cutoff_time;
};

std::vector<CellParams> enumerate_cells(const ScanSpec& spec) {
  std::vector<CellParams> cells;
  cells.reserve(spec.cell_count());
  for (double fa : spec.fa_values)
    for (int nd : spec.nd_values)
      for (bool adjust : spec.adjust_error_values)
        for (bool cutoff : spec.cutoff_values)
          cells.push_back(CellParams{fa, nd, adjust, cutoff});
  return cells;
}

RunConfig cell_config(const RunConfig& base, const CellParams& cell) {
  RunConfig config = base;
  config.fa = cell.fa;
  config.nd = cell.nd;
  config.adjust_error = cell.adjust_error;
  config.cutoff_time = cell.cutoff_time;
  return config;
}

void fold_log(CellResult& cell, const ExperimentLog& log) {
  std::uint64_t with_data = 0;
  bool all_reached = true;
  for (std::size_t s = 0; s < log.records.size(); ++s) {
    const MeasurementRecord& rec = log.records[s];
    SampleAggregate& agg = cell.samples[s];
    agg.events.update(static_cast<double>(rec.events));
    agg.ticks.update(static_cast<double>(rec.ticks_used));
    if (std::isfinite(rec.final_se)) {
      agg.final_se.update(rec.final_se);
    } else {
      agg.se_undefined += 1;
    }
    if (rec.reached_te()) agg.reached_te += 1; else all_reached = false;
    agg.count += 1;
    if (rec.events > 0) with_data += 1;
  }
  cell.samples_with_data.update(static_cast<double>(with_data));
  if (all_reached) cell.all_reached_te += 1;
  cell.replications += 1;
}

CellResult make_cell_result(const CellParams& cell, const ExperimentPlan& plan) {
  CellResult result;
  result.fa = cell.fa;
  result.nd = cell.nd;
  result.adjust_error = cell.adjust_error;
  result.cutoff_time = cell.cutoff_time;
  result.samples.resize(plan.samples.size());
  for (std::size_t s = 0; s < plan.samples.size(); ++s) {
    result.samples[s].sample_id = plan.samples[s].id;
    result.samples[s].pq = plan.samples[s].pq;
  }
  return result;
}

}  // namespace

double SampleAggregate::mean_final_se() const {
  if (se_undefined > 0) return std::numeric_limits<double>::infinity();
  return final_se.mean();
}

ScanResult execute_scan(const ScanSpec& spec, int threads) {
  validate_config(spec.base);
  const std::vector<CellParams> cells = enumerate_cells(spec);
  const ExperimentPlan plan =
      make_plan(spec.base.pq_grid, spec.base.nominal_te, spec.base.budget_ticks);
  const std::size_t reps = static_cast<std::size_t>(spec.replications);
  const std::size_t total_runs = cells.size() * reps;

  // Run logs land in a slot per (cell, replication); the reduction below is
  // strictly sequential in slot order, so the result is independent of the
  // number of workers.
  std::vector<ExperimentLog> logs(total_runs);

  const auto run_one = [&](std::size_t run_index) {
    const std::size_t cell_index = run_index / reps;
    const std::size_t replication = run_index % reps;
    const RunConfig config = cell_config(spec.base, cells[cell_index]);
    const std::uint64_t seed = derive_seed(spec.base_seed, cell_index, replication);
    logs[run_index] = run_experiment(plan, config, seed);
  };

  int worker_count = threads;
  if (worker_count <= 0) {
    worker_count = static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count <= 0) worker_count = 1;
  }
  worker_count = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(worker_count), total_runs));

  if (worker_count <= 1) {
    for (std::size_t i = 0; i < total_runs; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total_runs; i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }

  ScanResult result;
  result.spec = spec;
  result.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cell = make_cell_result(cells[c], plan);
    for (std::size_t r = 0; r < reps; ++r) fold_log(cell, logs[c * reps + r]);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

CellResult aggregate(const std::vector<ExperimentLog>& logs, const ExperimentPlan& plan) {
  CellResult cell = make_cell_result(CellParams{}, plan);
  std::vector<const ExperimentLog*> ordered;
  ordered.reserve(logs.size());
  for (const ExperimentLog& log : logs) ordered.push_back(&log);
  // Seed order makes the reduction independent of the caller's list order.
  std::sort(ordered.begin(), ordered.end(),
            [](const ExperimentLog* a, const ExperimentLog* b) { return a->seed < b->seed; });
  for (const ExperimentLog* log : ordered) fold_log(cell, *log);
  return cell;
}

}  // namespace opsim
