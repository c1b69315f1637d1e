#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "opsim/csv.hpp"

namespace opsim {

enum class SweptParam { Fa, Nd };

/// One chart: a fixed (adjust_error, cutoff) pair with one series per value
/// of the swept parameter.
struct PlotFacet {
  bool adjust_error = false;
  bool cutoff = false;
  SweptParam swept = SweptParam::Fa;
};

class EmptySelection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Renders a line chart of mean events-to-target over pq (log-scaled x,
/// ascending; note that measurement order runs high pq to low pq). Output is
/// a self-contained SVG document with deterministic bytes.
/// Throws EmptySelection when no rows match the facet.
std::string emit_plot(const std::vector<RunsCsvRow>& rows, const PlotFacet& facet,
                      const std::string& title);

}  // namespace opsim
