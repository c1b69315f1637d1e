#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opsim/scan.hpp"

namespace opsim {

struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& list_presets();

/// Built-in scan designs layered over `base` (which supplies physics, plan
/// and budget). Returns nullopt for an unknown name.
std::optional<ScanSpec> preset_spec(std::string_view name, const RunConfig& base);

}  // namespace opsim
