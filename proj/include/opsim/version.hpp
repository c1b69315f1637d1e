#pragma once

namespace opsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opsim
