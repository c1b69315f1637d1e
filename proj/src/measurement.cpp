#include "opsim/measurement.hpp"

#include <algorithm>
#include <cmath>

namespace opsim {

MeasurementRecord run_measurement(const Sample& sample, const MeasurementParams& params,
                                  AgentBundle& agents, const MesoContext& meso,
                                  SimClock& clock, RandomSource& rng) {
  MeasurementRecord rec;
  rec.sample_id = sample.id;
  rec.pq = sample.pq;
  rec.te_target = meso.te;
  rec.start_tick = clock.tick;
  rec.reason = StopReason::ClockExhausted;

  WorldState world;  // each measurement starts freshly aligned
  StatAccumulator acc;
  const std::uint64_t min_events = std::max<std::uint64_t>(2, params.min_events);
  const int samples_left = std::max(1, meso.samples_left);

  while (!clock.exhausted()) {
    step_stream(world, params.walk, rng);

    operator_observe(agents.op, world);
    OperatorCommand command = OperatorCommand::Hold;
    if (agents.op.ready()) {
      command = operator_act(agents.op, world, params.walk.beam_step);
    }
    step_beam(world, command, params.walk.beam_step);

    const Datum datum = generate_event(world, params.noise, sample.pq, clock.tick, rng);
    acc.update(datum.value);
    rec.events += 1;
    rec.misalign_sum += datum.misalignment_at_emit;
    const double inflation = 1.0 + params.noise.misalign_gain * datum.misalignment_at_emit;
    rec.inflation2_sum += inflation * inflation;

    const AnalystReport report = analyst_update(agents.analyst, acc, clock.tick);

    clock.tick += 1;
    rec.ticks_used += 1;

    if (acc.count() >= min_events && report.se <= meso.te) {
      rec.reason = StopReason::ReachedTE;
      break;
    }

    if (meso.abort_enabled) {
      const double share = clock.ticks_left() / static_cast<double>(samples_left);
      const MesoDecision decision = manager_meso_decide(report, meso.te, share, min_events);
      if (decision.verdict == Verdict::Abort) {
        rec.reason = *decision.reason;
        break;
      }
    }
  }

  rec.final_se = acc.standard_error();
  return rec;
}

}  // namespace opsim
