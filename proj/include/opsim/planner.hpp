#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opsim/config.hpp"
#include "opsim/measurement.hpp"
#include "opsim/sample.hpp"

namespace opsim {

/// Ordered sample queue for one run: strictly descending pq, i.e. easy,
/// low-importance samples first.
struct ExperimentPlan {
  std::vector<Sample> samples;
  std::uint64_t budget_ticks = RunConfig::kDefaultBudgetTicks;
};

/// Builds the plan from a pq grid: sorts descending, assigns ids s1..sN.
/// Throws ConfigError if the grid is empty, non-positive, or has duplicates.
ExperimentPlan make_plan(const std::vector<double>& pq_grid, double nominal_te,
                         std::uint64_t budget_ticks);

/// Sample at `cursor` in measurement order, or nullptr when exhausted.
const Sample* next_sample(const ExperimentPlan& plan, std::size_t cursor);

/// One completed (or truncated) measurement as the manager remembers it.
struct MeasurementSummary {
  double pq = 1.0;
  double achieved_se = 0.0;  // +inf when the measurement produced < 2 events
  std::uint64_t ticks = 0;
  std::uint64_t events = 0;
};

/// Macro-level manager state across a run.
struct ManagerState {
  bool adjust_error = false;
  bool cutoff_time = false;
  double te_current = 1e-3;
  double nominal_te = 1e-3;
  std::uint64_t budget_ticks = RunConfig::kDefaultBudgetTicks;
  std::uint64_t ticks_spent = 0;
  std::vector<MeasurementSummary> history;
};

/// Predicted ticks to bring a sample of quality pq to target te, using the
/// cost law ticks = C / (pq * te)^2. C is fitted from the run's history by
/// least squares through the origin; with no usable history it falls back to
/// the analytic misalignment-free value sigma0^2.
double estimate_cost(const std::vector<MeasurementSummary>& history, double pq,
                     double te, double sigma0);

/// Between-measurements target-error retuning: projects the remaining
/// samples' cost at the current target and rescales the target by
/// sqrt(projection / remaining budget) — the exact rebalancing under the
/// te^-2 cost law. Tightening is floored at the nominal target.
double adjust_te(const ManagerState& state, std::span<const Sample> remaining,
                 double sigma0);

struct ExperimentLog {
  std::uint64_t seed = 0;
  std::vector<MeasurementRecord> records;
  std::uint64_t total_ticks = 0;

  bool operator==(const ExperimentLog&) const = default;
};

/// Runs the whole plan on a shared clock: measure samples in order, retune
/// the target error between measurements when allowed, and log zero-event
/// records for samples the budget never reached.
ExperimentLog run_experiment(const ExperimentPlan& plan, const RunConfig& config,
                             std::uint64_t seed);

/// Convenience: plan from config.pq_grid, then run.
ExperimentLog run_experiment(const RunConfig& config, std::uint64_t seed);

}  // namespace opsim
