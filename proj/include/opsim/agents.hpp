#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>

#include "opsim/sim_core.hpp"
#include "opsim/streaming_stats.hpp"

namespace opsim {

enum class ButtonId { None, Left, Right };

struct OperatorParams {
  double fa = 0.1;                   // functional acuity: smallest noticeable misalignment
  int nd = 5;                        // noticing delay, ticks from recognition to first action
  double switch_cost_per_unit = 2.0; // ticks per layout unit when changing buttons
  double button_left_pos = 0.0;      // 1-D control-panel coordinates
  double button_right_pos = 1.0;

  double button_pos(ButtonId b) const {
    return b == ButtonId::Left ? button_left_pos : button_right_pos;
  }
};

/// Instrument operator: a small state machine driven once per tick.
///
/// Idle until the misalignment reaches fa, then counts down the noticing
/// delay, then chases the stream one button press per tick. Switching to the
/// other button costs ceil(switch_cost_per_unit * layout distance) ticks of
/// Hold. The first press of a run is free: the hand starts over no button.
struct OperatorState {
  enum class Phase { Idle, Noticing, Ready };

  OperatorParams params;
  Phase phase = Phase::Idle;
  int noticing_countdown = 0;
  ButtonId current_button = ButtonId::None;
  ButtonId pending_button = ButtonId::None;  // switch target while busy
  int busy_ticks = 0;

  explicit OperatorState(OperatorParams p = {}) : params(p) {}

  bool ready() const { return phase == Phase::Ready; }
  bool switching() const { return pending_button != ButtonId::None; }

  void go_idle() {
    phase = Phase::Idle;
    noticing_countdown = 0;
    pending_button = ButtonId::None;
    busy_ticks = 0;
  }
};

/// Per-tick perception step. Arms the noticing countdown when the
/// misalignment first reaches fa, decrements it while the excursion
/// persists, and drops back to idle when the misalignment is no longer
/// perceivable (unless a button switch is in progress).
void operator_observe(OperatorState& op, const WorldState& world);

/// Per-tick action step; call only when the operator is ready.
/// beam_step is the motor step a press would produce; a press that cannot
/// strictly reduce the misalignment is withheld.
OperatorCommand operator_act(OperatorState& op, const WorldState& world, double beam_step);

/// Trailing window of finite standard-error observations kept by the analyst.
class SEHistory {
 public:
  explicit SEHistory(int window_ticks) : window_(window_ticks) {}

  int window() const { return window_; }

 private:
  friend struct AnalystReport;
  friend AnalystReport analyst_update(SEHistory&, const StatAccumulator&, std::uint64_t);

  int window_ = 50;
  std::deque<std::pair<std::uint64_t, double>> points_;
  int nonneg_rate_streak_ = 0;
};

struct AnalystReport {
  std::uint64_t n = 0;
  double se = std::numeric_limits<double>::infinity();
  std::optional<double> se_rate;  // least-squares SE slope per tick over the window
  int window = 50;
  int nonneg_rate_streak = 0;     // consecutive ticks with a defined, non-negative slope
};

/// Appends the current standard error (when finite) and reports the trailing
/// least-squares slope of (tick, SE) over the window.
AnalystReport analyst_update(SEHistory& history, const StatAccumulator& acc,
                             std::uint64_t tick);

enum class Verdict { Continue, Abort };

struct MesoDecision {
  Verdict verdict = Verdict::Continue;
  std::optional<StopReason> reason;  // present iff verdict == Abort
};

/// Continue/abort decision for the running measurement. Considers only the
/// rate of improvement of the standard error and the beam time left for this
/// sample; the reached-target check lives in the measurement loop itself.
MesoDecision manager_meso_decide(const AnalystReport& report, double te,
                                 double ticks_remaining_for_sample,
                                 std::uint64_t min_events);

}  // namespace opsim
