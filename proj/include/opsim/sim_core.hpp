#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "opsim/random.hpp"

namespace opsim {

/// Simulation clock, shared by all measurements of a run. One tick is the
/// atomic time unit; during an active measurement one datum is produced per
/// tick. budget_ticks is the hard beam-time limit when the cutoff flag is on.
struct SimClock {
  std::uint64_t tick = 0;
  std::optional<std::uint64_t> budget_ticks;

  bool exhausted() const { return budget_ticks && tick >= *budget_ticks; }

  /// Remaining ticks; +infinity when there is no hard budget.
  double ticks_left() const {
    if (!budget_ticks) return std::numeric_limits<double>::infinity();
    return tick >= *budget_ticks ? 0.0 : static_cast<double>(*budget_ticks - tick);
  }
};

/// Positions of the randomly walking stream and the operator-driven beam.
struct WorldState {
  double stream_pos = 0.0;
  double beam_pos = 0.0;

  double misalignment() const { return std::abs(beam_pos - stream_pos); }
};

struct WalkParams {
  double walk_sigma = 0.05;  // std. dev. of the per-tick Gaussian stream step
  double beam_step = 0.1;    // beam displacement per Left/Right command
};

/// Per-datum noise: sigma_eff = (sigma0 / pq) * (1 + misalign_gain * misalignment).
/// Higher-quality samples (larger pq) produce tighter data; misalignment
/// inflates the noise linearly.
struct NoiseModel {
  double sigma0 = 1.0;
  double misalign_gain = 2.0;
  double true_signal = 0.0;

  double sigma_eff(double pq, double misalignment) const {
    return (sigma0 / pq) * (1.0 + misalign_gain * misalignment);
  }
};

struct Datum {
  double value = 0.0;
  std::uint64_t at_tick = 0;
  double misalignment_at_emit = 0.0;
};

enum class OperatorCommand { Left, Right, Hold };

/// Advances the stream by one Gaussian step. Consumes exactly one draw.
void step_stream(WorldState& world, const WalkParams& params, RandomSource& rng);

/// Applies an operator command to the beam; Hold leaves it in place.
void step_beam(WorldState& world, OperatorCommand command, double beam_step);

/// Emits one datum at the current alignment.
Datum generate_event(const WorldState& world, const NoiseModel& noise, double pq,
                     std::uint64_t tick, RandomSource& rng);

enum class StopReason {
  ReachedTE,         // standard error dropped to the target
  ProjectedOverrun,  // manager abort: projected time to target exceeds the share left
  NoImprovement,     // manager abort: standard error flat or rising for a full window
  ClockExhausted,    // beam-time budget ran out
};

std::string_view to_string(StopReason reason);

/// Outcome of one measurement (one sample's contiguous data-taking period).
struct MeasurementRecord {
  std::string sample_id;
  double pq = 1.0;
  double te_target = 1e-3;
  std::uint64_t start_tick = 0;
  std::uint64_t ticks_used = 0;
  std::uint64_t events = 0;
  double final_se = std::numeric_limits<double>::infinity();
  StopReason reason = StopReason::ClockExhausted;
  double misalign_sum = 0.0;    // sum of per-datum misalignment
  double inflation2_sum = 0.0;  // sum of per-datum (1 + gain*misalignment)^2

  bool reached_te() const { return reason == StopReason::ReachedTE; }
  bool no_data() const { return events == 0; }
  double mean_misalignment() const {
    return events == 0 ? 0.0 : misalign_sum / static_cast<double>(events);
  }

  bool operator==(const MeasurementRecord&) const = default;
};

}  // namespace opsim
