#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qlimit {

// Logarithmic grid in dimensionless kappa*t.
struct LogGrid {
  double start = 1e-3;
  double stop = 1e2;
  std::size_t points = 200;

  // Throws InvalidArgument unless 0 < start < stop and points >= 2.
  void validate() const;

  // start * (stop/start)^(i/(points-1)); the endpoints are exact.
  std::vector<double> values() const;

  // Parses "log:START:STOP:POINTS".
  static LogGrid parse(std::string_view spec);

  std::string to_string() const;
};

}  // namespace qlimit
