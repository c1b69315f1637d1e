#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opsim {

/// Every tunable of a run, flat. Parsed from `section.key = value` text with
/// `#` comments; unknown keys are rejected. Defaults reproduce the built-in
/// scenario grids.
struct RunConfig {
  // world
  double walk_sigma = 0.05;
  double beam_step = 0.1;
  // noise
  double sigma0 = 1.0;
  double misalign_gain = 2.0;
  double true_signal = 0.0;
  // operator
  double fa = 0.1;
  int nd = 5;
  double switch_cost_per_unit = 2.0;
  double button_left_pos = 0.0;
  double button_right_pos = 1.0;
  // analyst
  int se_window = 50;
  std::uint64_t min_events = 5;
  // manager
  double nominal_te = 1e-3;
  bool adjust_error = false;
  bool cutoff_time = false;
  std::uint64_t budget_ticks = kDefaultBudgetTicks;
  // plan
  std::vector<double> pq_grid = {1000.0, 300.0, 100.0, 30.0, 10.0};
  // scan
  std::vector<double> fa_values = {0.1};
  std::vector<int> nd_values = {5};
  std::vector<bool> adjust_error_values = {false};
  std::vector<bool> cutoff_values = {false};
  int replications = 30;
  std::uint64_t base_seed = 42;

  /// Beam-time budget for the time-pressure scenarios: 1.5x the measured
  /// fixed-target cost of the first three default samples, so the squeeze
  /// lands on the last two. Recompute if the noise defaults change.
  static constexpr std::uint64_t kDefaultBudgetTicks = 380;

  bool operator==(const RunConfig&) const = default;
};

enum class ConfigErrorKind { UnknownKey, TypeMismatch, ConstraintViolation };

std::string_view to_string(ConfigErrorKind kind);

/// Parse/validation diagnostic; names the offending key and (when parsed
/// from text) the 1-based line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, std::string key, int line, const std::string& message);

  ConfigErrorKind kind() const { return kind_; }
  const std::string& key() const { return key_; }
  int line() const { return line_; }  // 0 when not tied to a text location

 private:
  ConfigErrorKind kind_;
  std::string key_;
  int line_;
};

/// File-level failure (missing file, unreadable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a key-value document, applying defaults for absent keys and
/// validating every field. Throws ConfigError with key and line on the first
/// problem found.
RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Re-checks all field constraints (positivity, ranges, distinct pq grid).
void validate_config(const RunConfig& config);

/// Reads and parses a config file. Throws IoError if unreadable.
RunConfig load_config_file(const std::string& path);

}  // namespace opsim
