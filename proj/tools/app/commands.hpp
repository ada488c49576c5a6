#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qlimit/grid.hpp"
#include "qlimit/numerics.hpp"

namespace qlimit::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitNonConvergent = 3;
inline constexpr int kExitIo = 4;

/// Entry point shared by the `qlimit` binary and the tests. args excludes the
/// program name. Returns the process exit code:
/// 0 success, 2 bad arguments (including an out-of-spectrum level or a
/// period-blind model), 3 numerical non-convergence, 4 I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FigureOptions {
  int which = 1;  // 1..4
  std::filesystem::path out_dir = "figures";
  std::vector<int> levels;  // empty: the default family for the figure
  LogGrid grid{};
  double kappa = 1.0;
  double lambda = 1.0;  // figures 3-4 use omega = ratio * lambda
  SeriesTolerance tol{};
};

// Writes fig<N>.csv (+ manifest sidecar) and fig<N>.svg; returns the paths.
std::vector<std::filesystem::path> write_figure(const FigureOptions& opts);

// Default preset directory (QLIMIT_PRESET_DIR environment variable, else the
// directory configured at build time).
std::filesystem::path default_preset_dir();

}  // namespace qlimit::app
