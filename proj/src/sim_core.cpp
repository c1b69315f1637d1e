#include "opsim/sim_core.hpp"

namespace opsim {

void step_stream(WorldState& world, const WalkParams& params, RandomSource& rng) {
  // One draw per tick even for walk_sigma == 0, so the value stream does not
  // depend on the walk magnitude.
  world.stream_pos += rng.normal(0.0, params.walk_sigma);
}

void step_beam(WorldState& world, OperatorCommand command, double beam_step) {
  switch (command) {
    case OperatorCommand::Left:
      world.beam_pos -= beam_step;
      break;
    case OperatorCommand::Right:
      world.beam_pos += beam_step;
      break;
    case OperatorCommand::Hold:
      break;
  }
}

Datum generate_event(const WorldState& world, const NoiseModel& noise, double pq,
                     std::uint64_t tick, RandomSource& rng) {
  const double misalignment = world.misalignment();
  return Datum{
      .value = rng.normal(noise.true_signal, noise.sigma_eff(pq, misalignment)),
      .at_tick = tick,
      .misalignment_at_emit = misalignment,
  };
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ReachedTE: return "reached_te";
    case StopReason::ProjectedOverrun: return "projected_overrun";
    case StopReason::NoImprovement: return "no_improvement";
    case StopReason::ClockExhausted: return "clock_exhausted";
  }
  return "unknown";
}

}  // namespace opsim
