#include "opsim/agents.hpp"

#include <algorithm>
#include <cmath>

namespace opsim {

void operator_observe(OperatorState& op, const WorldState& world) {
  const double m = world.misalignment();

  switch (op.phase) {
    case OperatorState::Phase::Idle:
      if (m >= op.params.fa) {
        op.noticing_countdown = op.params.nd;
        op.phase = op.noticing_countdown == 0 ? OperatorState::Phase::Ready
                                              : OperatorState::Phase::Noticing;
      }
      break;
    case OperatorState::Phase::Noticing:
      if (m < op.params.fa) {
        op.go_idle();  // excursion vanished before it was acted on
      } else if (--op.noticing_countdown <= 0) {
        op.noticing_countdown = 0;
        op.phase = OperatorState::Phase::Ready;
      }
      break;
    case OperatorState::Phase::Ready:
      // A button switch in progress is an action in progress; completion and
      // the final perception check are handled by operator_act.
      if (m < op.params.fa && !op.switching()) op.go_idle();
      break;
  }
}

OperatorCommand operator_act(OperatorState& op, const WorldState& world, double beam_step) {
  const double m = world.misalignment();

  if (m < op.params.fa) {
    op.go_idle();
    return OperatorCommand::Hold;
  }

  // A press moves the beam by beam_step; it strictly reduces |beam - stream|
  // only when beam_step < 2 * misalignment. Otherwise hold, stay ready.
  if (beam_step >= 2.0 * m) return OperatorCommand::Hold;

  const ButtonId desired =
      world.stream_pos < world.beam_pos ? ButtonId::Left : ButtonId::Right;

  if (op.current_button == desired) {
    // Already on the right button; cancel any stale switch.
    op.pending_button = ButtonId::None;
    op.busy_ticks = 0;
    return desired == ButtonId::Left ? OperatorCommand::Left : OperatorCommand::Right;
  }

  if (op.pending_button == desired) {
    if (op.busy_ticks > 0) {
      --op.busy_ticks;
      return OperatorCommand::Hold;
    }
    op.current_button = desired;
    op.pending_button = ButtonId::None;
    return desired == ButtonId::Left ? OperatorCommand::Left : OperatorCommand::Right;
  }

  // Start a switch. The first press of a run (no button yet) is free.
  if (op.current_button == ButtonId::None) {
    op.current_button = desired;
    return desired == ButtonId::Left ? OperatorCommand::Left : OperatorCommand::Right;
  }
  const double distance =
      std::abs(op.params.button_pos(desired) - op.params.button_pos(op.current_button));
  const int cost = static_cast<int>(std::ceil(op.params.switch_cost_per_unit * distance));
  if (cost <= 0) {
    op.current_button = desired;
    op.pending_button = ButtonId::None;
    op.busy_ticks = 0;
    return desired == ButtonId::Left ? OperatorCommand::Left : OperatorCommand::Right;
  }
  op.pending_button = desired;
  op.busy_ticks = cost - 1;  // this tick is the first Hold of the switch
  return OperatorCommand::Hold;
}

AnalystReport analyst_update(SEHistory& history, const StatAccumulator& acc,
                             std::uint64_t tick) {
  const double se = acc.standard_error();
  if (std::isfinite(se)) history.points_.emplace_back(tick, se);

  // Keep observations from (tick - window, tick].
  while (!history.points_.empty() &&
         history.points_.front().first + static_cast<std::uint64_t>(history.window_) <= tick) {
    history.points_.pop_front();
  }

  AnalystReport report;
  report.n = acc.count();
  report.se = se;
  report.window = history.window_;

  if (history.points_.size() >= 2) {
    double tbar = 0.0, ybar = 0.0;
    for (const auto& [t, y] : history.points_) {
      tbar += static_cast<double>(t);
      ybar += y;
    }
    const double k = static_cast<double>(history.points_.size());
    tbar /= k;
    ybar /= k;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [t, y] : history.points_) {
      const double dt = static_cast<double>(t) - tbar;
      sxy += dt * (y - ybar);
      sxx += dt * dt;
    }
    report.se_rate = sxy / sxx;  // sxx > 0: ticks are distinct
  }

  if (report.se_rate && *report.se_rate >= 0.0) {
    ++history.nonneg_rate_streak_;
  } else {
    history.nonneg_rate_streak_ = 0;
  }
  report.nonneg_rate_streak = history.nonneg_rate_streak_;
  return report;
}

MesoDecision manager_meso_decide(const AnalystReport& report, double te,
                                 double ticks_remaining_for_sample,
                                 std::uint64_t min_events) {
  if (!report.se_rate) return {};

  const double rate = *report.se_rate;
  if (rate >= 0.0) {
    // Abort only when the stagnation has lasted a full window; a single flat
    // slope estimate is noise.
    if (report.nonneg_rate_streak >= report.window && report.n >= min_events &&
        report.se > te) {
      return {Verdict::Abort, StopReason::NoImprovement};
    }
    return {};
  }

  if (std::isfinite(ticks_remaining_for_sample)) {
    const double projected = (report.se - te) / (-rate);
    if (projected > ticks_remaining_for_sample) {
      return {Verdict::Abort, StopReason::ProjectedOverrun};
    }
  }
  return {};
}

}  // namespace opsim
