#pragma once

#include <string>

namespace opsim {

/// Material under study. Larger pq (performance quality) means data comes
/// easier; lower-pq samples are the scientifically important ones and are
/// measured last.
struct Sample {
  std::string id;
  double pq = 1.0;
  double nominal_te = 1e-3;

  bool operator==(const Sample&) const = default;
};

}  // namespace opsim
