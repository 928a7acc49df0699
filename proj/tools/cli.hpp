#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rineq/riccati.hpp"

namespace rineq::cli {

enum class Command { kSpectrum, kClassify, kCheck, kSolve, kTrace, kKy };

struct RunConfig {
  Command command = Command::kCheck;
  std::filesystem::path input_path;
  double tol = kDefaultTol;
  double axis_tol = kDefaultAxisTol;
  SolutionMode mode = SolutionMode::kStabilizing;
  double t_max = 1.0;
  int steps = 101;
  double delta = 1.0;
  double omega_max = 0.0;  // 0 selects 10 |A| + 1
  int grid_points = kDefaultGridPoints;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::filesystem::path> events_path;  // trace events as JSON
  std::optional<std::filesystem::path> delta_g_path;  // solve with this Delta G (a JSON matrix)
};

/// Exit status 0 on success, 2 when the problem is not solvable, 1 on errors.
/// Reports go to the output path or `out`; errors go to `err` as
/// {code, message, context}.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::optional<Command> parse_command(const std::string& name);

}  // namespace rineq::cli
