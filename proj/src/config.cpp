#include "opsim/config.hpp"

#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "opsim/text.hpp"

namespace opsim {

std::string_view to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::UnknownKey: return "unknown key";
    case ConfigErrorKind::TypeMismatch: return "type mismatch";
    case ConfigErrorKind::ConstraintViolation: return "constraint violation";
  }
  return "error";
}

namespace {

std::string describe(ConfigErrorKind kind, const std::string& key, int line,
                     const std::string& message) {
  std::ostringstream out;
  out << to_string(kind) << ": " << key;
  if (line > 0) out << " (line " << line << ")";
  if (!message.empty()) out << ": " << message;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(ConfigErrorKind kind, std::string key, int line,
                         const std::string& message)
    : std::runtime_error(describe(kind, key, line, message)),
      kind_(kind),
      key_(std::move(key)),
      line_(line) {}

namespace {

using FieldPtr = std::variant<double RunConfig::*, int RunConfig::*,
                              std::uint64_t RunConfig::*, bool RunConfig::*,
                              std::vector<double> RunConfig::*,
                              std::vector<int> RunConfig::*,
                              std::vector<bool> RunConfig::*>;

struct FieldDef {
  const char* key;
  FieldPtr ptr;
};

// Serialization order is the documented canonical order.
const FieldDef kFields[] = {
    {"world.walk_sigma", &RunConfig::walk_sigma},
    {"world.beam_step", &RunConfig::beam_step},
    {"noise.sigma0", &RunConfig::sigma0},
    {"noise.misalign_gain", &RunConfig::misalign_gain},
    {"noise.true_signal", &RunConfig::true_signal},
    {"operator.fa", &RunConfig::fa},
    {"operator.nd", &RunConfig::nd},
    {"operator.switch_cost_per_unit", &RunConfig::switch_cost_per_unit},
    {"operator.button_left_pos", &RunConfig::button_left_pos},
    {"operator.button_right_pos", &RunConfig::button_right_pos},
    {"analyst.se_window", &RunConfig::se_window},
    {"analyst.min_events", &RunConfig::min_events},
    {"manager.nominal_te", &RunConfig::nominal_te},
    {"manager.adjust_error", &RunConfig::adjust_error},
    {"manager.cutoff_time", &RunConfig::cutoff_time},
    {"manager.budget_ticks", &RunConfig::budget_ticks},
    {"plan.pq_grid", &RunConfig::pq_grid},
    {"scan.fa_values", &RunConfig::fa_values},
    {"scan.nd_values", &RunConfig::nd_values},
    {"scan.adjust_error_values", &RunConfig::adjust_error_values},
    {"scan.cutoff_values", &RunConfig::cutoff_values},
    {"scan.replications", &RunConfig::replications},
    {"scan.base_seed", &RunConfig::base_seed},
};

[[noreturn]] void type_error(const std::string& key, int line, const std::string& expected) {
  throw ConfigError(ConfigErrorKind::TypeMismatch, key, line, "expected " + expected);
}

double parse_double_token(std::string_view raw, const std::string& key, int line) {
  const std::string token{trim(raw)};
  if (token.empty()) type_error(key, line, "a number");
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || !std::isfinite(value)) {
    type_error(key, line, "a finite number");
  }
  return value;
}

long long parse_int_token(std::string_view raw, const std::string& key, int line) {
  const std::string token{trim(raw)};
  long long value = 0;
  const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || p != token.data() + token.size()) {
    type_error(key, line, "an integer");
  }
  return value;
}

bool parse_bool_token(std::string_view raw, const std::string& key, int line) {
  const std::string_view token = trim(raw);
  if (token == "true") return true;
  if (token == "false") return false;
  type_error(key, line, "true or false");
}

std::vector<std::string_view> split_list(std::string_view raw) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const std::size_t comma = raw.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
    out.push_back(raw.substr(start, end - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void assign_field(RunConfig& config, const FieldDef& field, std::string_view raw, int line) {
  const std::string key = field.key;
  std::visit(
      [&](auto ptr) {
        using Member = std::remove_reference_t<decltype(config.*ptr)>;
        if constexpr (std::is_same_v<Member, double>) {
          config.*ptr = parse_double_token(raw, key, line);
        } else if constexpr (std::is_same_v<Member, int>) {
          const long long v = parse_int_token(raw, key, line);
          if (v < INT_MIN || v > INT_MAX) type_error(key, line, "an integer in range");
          config.*ptr = static_cast<int>(v);
        } else if constexpr (std::is_same_v<Member, std::uint64_t>) {
          const long long v = parse_int_token(raw, key, line);
          if (v < 0) type_error(key, line, "a non-negative integer");
          config.*ptr = static_cast<std::uint64_t>(v);
        } else if constexpr (std::is_same_v<Member, bool>) {
          config.*ptr = parse_bool_token(raw, key, line);
        } else if constexpr (std::is_same_v<Member, std::vector<double>>) {
          Member values;
          for (std::string_view item : split_list(raw)) {
            values.push_back(parse_double_token(item, key, line));
          }
          config.*ptr = std::move(values);
        } else if constexpr (std::is_same_v<Member, std::vector<int>>) {
          Member values;
          for (std::string_view item : split_list(raw)) {
            const long long v = parse_int_token(item, key, line);
            if (v < INT_MIN || v > INT_MAX) type_error(key, line, "an integer in range");
            values.push_back(static_cast<int>(v));
          }
          config.*ptr = std::move(values);
        } else {
          Member values;
          for (std::string_view item : split_list(raw)) {
            values.push_back(parse_bool_token(item, key, line));
          }
          config.*ptr = std::move(values);
        }
      },
      field.ptr);
}

std::string render_field(const RunConfig& config, const FieldDef& field) {
  return std::visit(
      [&](auto ptr) -> std::string {
        using Member = std::remove_reference_t<decltype(config.*ptr)>;
        if constexpr (std::is_same_v<Member, double>) {
          return format_double(config.*ptr);
        } else if constexpr (std::is_same_v<Member, int> ||
                             std::is_same_v<Member, std::uint64_t>) {
          return std::to_string(config.*ptr);
        } else if constexpr (std::is_same_v<Member, bool>) {
          return (config.*ptr) ? "true" : "false";
        } else {
          std::string out;
          bool first = true;
          for (const auto& v : config.*ptr) {
            if (!first) out += ", ";
            first = false;
            if constexpr (std::is_same_v<Member, std::vector<double>>) {
              out += format_double(v);
            } else if constexpr (std::is_same_v<Member, std::vector<int>>) {
              out += std::to_string(v);
            } else {
              out += v ? "true" : "false";
            }
          }
          return out;
        }
      },
      field.ptr);
}

[[noreturn]] void constraint_error(std::string_view key, int line, const char* message) {
  throw ConfigError(ConfigErrorKind::ConstraintViolation, std::string(key), line, message);
}

void check_field(const RunConfig& c, std::string_view key, int line) {
  const auto positive = [&](double v, const char* msg = "must be > 0") {
    if (!(v > 0.0)) constraint_error(key, line, msg);
  };
  const auto non_negative = [&](double v, const char* msg = "must be >= 0") {
    if (v < 0.0) constraint_error(key, line, msg);
  };

  if (key == "world.walk_sigma") positive(c.walk_sigma);
  else if (key == "world.beam_step") positive(c.beam_step);
  else if (key == "noise.sigma0") positive(c.sigma0);
  else if (key == "noise.misalign_gain") non_negative(c.misalign_gain);
  else if (key == "operator.fa") positive(c.fa);
  else if (key == "operator.nd") non_negative(c.nd);
  else if (key == "operator.switch_cost_per_unit") non_negative(c.switch_cost_per_unit);
  else if (key == "analyst.se_window") {
    if (c.se_window < 1) constraint_error(key, line, "must be >= 1");
  } else if (key == "analyst.min_events") {
    if (c.min_events < 2) constraint_error(key, line, "must be >= 2");
  } else if (key == "manager.nominal_te") positive(c.nominal_te);
  else if (key == "manager.budget_ticks") {
    if (c.budget_ticks < 1) constraint_error(key, line, "must be >= 1");
  } else if (key == "plan.pq_grid") {
    if (c.pq_grid.empty()) constraint_error(key, line, "must be nonempty");
    std::set<double> seen;
    for (double pq : c.pq_grid) {
      if (!(pq > 0.0)) constraint_error(key, line, "pq values must be > 0");
      if (!seen.insert(pq).second) constraint_error(key, line, "pq values must be distinct");
    }
  } else if (key == "scan.fa_values") {
    if (c.fa_values.empty()) constraint_error(key, line, "must be nonempty");
    for (double v : c.fa_values) positive(v, "values must be > 0");
  } else if (key == "scan.nd_values") {
    if (c.nd_values.empty()) constraint_error(key, line, "must be nonempty");
    for (int v : c.nd_values) non_negative(v, "values must be >= 0");
  } else if (key == "scan.adjust_error_values") {
    if (c.adjust_error_values.empty()) constraint_error(key, line, "must be nonempty");
  } else if (key == "scan.cutoff_values") {
    if (c.cutoff_values.empty()) constraint_error(key, line, "must be nonempty");
  } else if (key == "scan.replications") {
    if (c.replications < 1) constraint_error(key, line, "must be >= 1");
  }
  // remaining keys are unconstrained
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(ConfigErrorKind::TypeMismatch, std::string(trim(line)), line_no,
                        "expected key = value");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));

    const FieldDef* field = nullptr;
    for (const FieldDef& f : kFields) {
      if (key == f.key) {
        field = &f;
        break;
      }
    }
    if (!field) {
      throw ConfigError(ConfigErrorKind::UnknownKey, key, line_no, "");
    }
    assign_field(config, *field, value, line_no);
    check_field(config, key, line_no);
  }
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string_view section;
  for (const FieldDef& field : kFields) {
    const std::string_view key = field.key;
    const std::string_view this_section = key.substr(0, key.find('.'));
    if (this_section != section) {
      if (!out.empty()) out += "\n";
      section = this_section;
    }
    out += key;
    out += " = ";
    out += render_field(config, field);
    out += "\n";
  }
  return out;
}

void validate_config(const RunConfig& config) {
  for (const FieldDef& field : kFields) check_field(config, field.key, 0);
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace opsim
