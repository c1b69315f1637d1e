#pragma once

#include <cstdint>

#include "opsim/agents.hpp"
#include "opsim/sample.hpp"
#include "opsim/sim_core.hpp"

namespace opsim {

/// Physics and analyst knobs shared by every measurement of a run.
struct MeasurementParams {
  WalkParams walk;
  NoiseModel noise;
  int se_window = 50;
  std::uint64_t min_events = 5;  // events required before the stop rule may fire
};

/// Mutable agent state owned by one measurement.
struct AgentBundle {
  OperatorState op;
  SEHistory analyst;

  AgentBundle(OperatorParams op_params, int se_window)
      : op(op_params), analyst(se_window) {}
};

/// Manager-side context for the running measurement.
struct MesoContext {
  double te = 1e-3;
  bool abort_enabled = false;  // manager may cut the measurement (re-planning on)
  int samples_left = 1;        // not yet measured, including the current one
};

/// Runs one measurement: per tick the stream steps, the operator observes and
/// acts, the beam moves, a datum is emitted and accumulated, and the analyst
/// report feeds the manager's continue/abort decision. Terminates when the
/// standard error reaches the target, on a manager abort, or when the clock
/// runs out. A run that gets no time at all returns a zero-event record with
/// reason ClockExhausted.
MeasurementRecord run_measurement(const Sample& sample, const MeasurementParams& params,
                                  AgentBundle& agents, const MesoContext& meso,
                                  SimClock& clock, RandomSource& rng);

}  // namespace opsim
