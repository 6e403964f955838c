#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "hillband/floquet.hpp"

namespace hillband::cli {

/// Tunables that a key=value config file may override.
struct ToolConfig {
  ArcOptions arcs;
  int plot_grid = 256;
};

/// Raised for unreadable files (I/O) and for malformed or unknown entries.
struct ConfigIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigSyntaxError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// key=value lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

/// Recognised keys:
///   solver.max_iterations, solver.newton_steps, solver.step_tolerance,
///   solver.residual_factor, solver.cluster_tolerance,
///   arcs.refine_levels, arcs.refine_ratio, arcs.merge_tolerance, threads,
///   plot.grid
void apply_config(ToolConfig& config, const std::map<std::string, std::string>& entries);

}  // namespace hillband::cli
