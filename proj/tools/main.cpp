#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "rineq/io.hpp"

int main(int argc, char** argv) {
  using rineq::cli::Command;
  rineq::cli::RunConfig cfg;
  std::string command;
  std::string mode = "stabilizing";
  std::string output;
  std::string events;
  std::string delta_g;

  CLI::App app{"Solvability and solutions of Riccati inequalities with indefinite quadratic term"};
  app.add_option("command", command, "spectrum | classify | check | solve | trace | ky")
      ->required()
      ->check(CLI::IsMember({"spectrum", "classify", "check", "solve", "trace", "ky"}));
  app.add_option("input", cfg.input_path, "problem JSON file")->required()->check(CLI::ExistingFile);
  app.add_option("--tol", cfg.tol, "relative linear-algebra tolerance")->capture_default_str();
  app.add_option("--axis-tol", cfg.axis_tol, "imaginary-axis band relative to |R|")
      ->capture_default_str();
  app.add_option("--mode", mode, "stabilizing | anti_stabilizing")
      ->check(CLI::IsMember({"stabilizing", "anti_stabilizing"}))
      ->capture_default_str();
  app.add_option("--t-max", cfg.t_max, "trace: largest t")->capture_default_str();
  app.add_option("--steps", cfg.steps, "trace: number of t values")->capture_default_str();
  app.add_option("--delta", cfg.delta, "trace: probe strength")->capture_default_str();
  app.add_option("--omega-max", cfg.omega_max, "ky: grid half-width (default 10|A|+1)");
  app.add_option("--grid-points", cfg.grid_points, "ky: number of grid nodes")
      ->capture_default_str();
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_option("--events", events, "trace: write events JSON here");
  app.add_option("--delta-g", delta_g, "solve: use this positive definite Delta G (JSON matrix)")
      ->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  cfg.command = *rineq::cli::parse_command(command);
  cfg.mode = rineq::solution_mode_from_string(mode);
  if (!output.empty()) cfg.output_path = output;
  if (!events.empty()) cfg.events_path = events;
  if (!delta_g.empty()) cfg.delta_g_path = delta_g;
  return rineq::cli::run(cfg, std::cout, std::cerr);
}
