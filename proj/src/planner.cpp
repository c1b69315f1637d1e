#include "opsim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opsim {

ExperimentPlan make_plan(const std::vector<double>& pq_grid, double nominal_te,
                         std::uint64_t budget_ticks) {
  if (pq_grid.empty()) {
    throw ConfigError(ConfigErrorKind::ConstraintViolation, "plan.pq_grid", 0,
                      "pq grid must be nonempty");
  }
  for (double pq : pq_grid) {
    if (!(pq > 0.0)) {
      throw ConfigError(ConfigErrorKind::ConstraintViolation, "plan.pq_grid", 0,
                        "pq values must be positive");
    }
  }
  std::vector<double> sorted = pq_grid;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError(ConfigErrorKind::ConstraintViolation, "plan.pq_grid", 0,
                      "pq values must be distinct");
  }

  ExperimentPlan plan;
  plan.budget_ticks = budget_ticks;
  plan.samples.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    plan.samples.push_back(Sample{"s" + std::to_string(i + 1), sorted[i], nominal_te});
  }
  return plan;
}

const Sample* next_sample(const ExperimentPlan& plan, std::size_t cursor) {
  return cursor < plan.samples.size() ? &plan.samples[cursor] : nullptr;
}

double estimate_cost(const std::vector<MeasurementSummary>& history, double pq,
                     double te, double sigma0) {
  // Fit ticks = C * x with x = 1/(pq * se)^2 through the origin. A truncated
  // measurement still informs the fit through the error it actually reached,
  // so use achieved_se rather than the target it was aiming for.
  double sxy = 0.0, sxx = 0.0;
  for (const MeasurementSummary& m : history) {
    if (m.events == 0 || !std::isfinite(m.achieved_se) || m.achieved_se <= 0.0) continue;
    const double x = 1.0 / ((m.pq * m.achieved_se) * (m.pq * m.achieved_se));
    sxy += static_cast<double>(m.ticks) * x;
    sxx += x * x;
  }
  const double c = sxx > 0.0 ? sxy / sxx : sigma0 * sigma0;
  return c / ((pq * te) * (pq * te));
}

double adjust_te(const ManagerState& state, std::span<const Sample> remaining,
                 double sigma0) {
  if (remaining.empty()) return state.te_current;

  const double budget_left =
      static_cast<double>(state.budget_ticks) - static_cast<double>(state.ticks_spent);
  if (budget_left < 1.0) return state.te_current;  // nothing left to rebalance

  double projection = 0.0;
  for (const Sample& s : remaining) {
    projection += estimate_cost(state.history, s.pq, state.te_current, sigma0);
  }
  if (projection <= 0.0) return state.te_current;

  // Under ticks ~ te^-2, scaling te by sqrt(projection/budget) makes the
  // projected cost exactly fit the remaining budget. Never tighten past the
  // nominal target.
  const double rebalanced = state.te_current * std::sqrt(projection / budget_left);
  return std::max(state.nominal_te, rebalanced);
}

ExperimentLog run_experiment(const ExperimentPlan& plan, const RunConfig& config,
                             std::uint64_t seed) {
  if (plan.samples.empty()) {
    throw ConfigError(ConfigErrorKind::ConstraintViolation, "plan.pq_grid", 0,
                      "experiment plan is empty");
  }

  RandomSource rng(seed);
  SimClock clock;
  if (config.cutoff_time) clock.budget_ticks = plan.budget_ticks;

  MeasurementParams params;
  params.walk = WalkParams{config.walk_sigma, config.beam_step};
  params.noise = NoiseModel{config.sigma0, config.misalign_gain, config.true_signal};
  params.se_window = config.se_window;
  params.min_events = config.min_events;

  const OperatorParams op_params{config.fa, config.nd, config.switch_cost_per_unit,
                                 config.button_left_pos, config.button_right_pos};

  ManagerState manager;
  manager.adjust_error = config.adjust_error;
  manager.cutoff_time = config.cutoff_time;
  manager.te_current = config.nominal_te;
  manager.nominal_te = config.nominal_te;
  manager.budget_ticks = plan.budget_ticks;

  ExperimentLog log;
  log.seed = seed;
  log.records.reserve(plan.samples.size());

  std::size_t cursor = 0;
  while (const Sample* sample = next_sample(plan, cursor)) {
    // The first sample always runs at the nominal target; afterwards the
    // manager may retune between measurements.
    if (cursor > 0 && manager.adjust_error) {
      const std::span<const Sample> remaining{plan.samples.data() + cursor,
                                              plan.samples.size() - cursor};
      manager.te_current = adjust_te(manager, remaining, config.sigma0);
    }

    AgentBundle agents{op_params, params.se_window};
    MesoContext meso;
    meso.te = manager.te_current;
    meso.abort_enabled = manager.adjust_error;
    meso.samples_left = static_cast<int>(plan.samples.size() - cursor);

    MeasurementRecord rec = run_measurement(*sample, params, agents, meso, clock, rng);
    manager.ticks_spent += rec.ticks_used;
    manager.history.push_back(
        MeasurementSummary{rec.pq, rec.final_se, rec.ticks_used, rec.events});
    log.records.push_back(std::move(rec));
    ++cursor;
  }

  log.total_ticks = manager.ticks_spent;
  return log;
}

ExperimentLog run_experiment(const RunConfig& config, std::uint64_t seed) {
  return run_experiment(make_plan(config.pq_grid, config.nominal_te, config.budget_ticks),
                        config, seed);
}

}  // namespace opsim
