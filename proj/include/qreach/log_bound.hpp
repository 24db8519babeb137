#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace qreach {

/// A count too large for native numerics, held as its natural logarithm.
/// `source` names the bound it came from; `parameters` records the inputs in
/// a fixed order; `flags` carries any unmet hypotheses.
struct LogBound {
  double ln_value = 0.0;
  std::string source;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> flags;

  double log10_value() const { return ln_value / std::log(10.0); }
};

}  // namespace qreach
