#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "rineq/io.hpp"

namespace rineq::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kNotSolvable = 2;

void check_config(const RunConfig& cfg) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be positive", name);
    }
  };
  positive(cfg.tol, "tol");
  positive(cfg.axis_tol, "axis_tol");
  positive(cfg.t_max, "t_max");
  positive(cfg.delta, "delta");
  if (cfg.omega_max < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "omega_max must be positive", "omega_max");
  }
  if (cfg.steps < 2) throw Error(ErrorCode::kInvalidArgument, "steps must be at least 2", "steps");
  if (cfg.grid_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid_points must be at least 2", "grid_points");
  }
}

KreinOptions krein_options(const RunConfig& cfg) {
  KreinOptions k;
  k.axis_tol = cfg.axis_tol;
  k.tol = cfg.tol;
  return k;
}

ComplexMatrix load_matrix(const std::filesystem::path& path, Eigen::Index n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open file", path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), path.string());
  }
  ComplexMatrix m = matrix_from_json(j, "delta_g");
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "Delta G must be n x n", "delta_g");
  }
  return m;
}

struct Outcome {
  std::string body;
  int status = kOk;
};

Outcome execute(const RunConfig& cfg) {
  const RiccatiProblem p = load_problem(cfg.input_path, cfg.tol);
  const KreinOptions k = krein_options(cfg);
  Outcome o;
  switch (cfg.command) {
    case Command::kSpectrum:
      o.body = Json(spectrum(build_hamiltonian(p, cfg.tol), cfg.axis_tol, cfg.tol)).dump(2);
      break;
    case Command::kClassify:
      o.body = Json(classify(build_hamiltonian(p, cfg.tol), k)).dump(2);
      break;
    case Command::kCheck: {
      const SolvabilityVerdict v = verdict(p, k);
      o.body = Json(v).dump(2);
      if (v.status == VerdictStatus::kNotSolvable) o.status = kNotSolvable;
      if (v.status == VerdictStatus::kIndeterminate) o.status = kFailure;
      break;
    }
    case Command::kSolve: {
      SolveOptions so;
      so.delta_g.krein = k;
      if (cfg.delta_g_path) {
        so.delta_g.strategy = DeltaGStrategy::kUser;
        so.delta_g.user_delta_g = load_matrix(*cfg.delta_g_path, p.n());
      }
      o.body = Json(solve_inequality(p, cfg.mode, so)).dump(2);
      break;
    }
    case Command::kTrace: {
      const HamiltonianPair hp = build_hamiltonian(p, cfg.tol);
      const AxisClassification c = classify(hp, k);
      const ProbeMatrix probe = construct_probe(hp, c, cfg.delta);
      TraceOptions to;
      to.axis_tol = cfg.axis_tol;
      to.tol = cfg.tol;
      const TraceResult trace = trace_eigenvalues(hp, probe, cfg.t_max, cfg.steps, to);
      std::ostringstream csv;
      write_trace_csv(trace, csv);
      o.body = csv.str();
      if (cfg.events_path) {
        Json ev;
        ev["events"] = trace.events;
        ev["truncated"] = trace.truncated;
        ev["diagnostic"] = trace.diagnostic;
        std::ofstream f(*cfg.events_path);
        if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write events file", "events");
        f << ev.dump(2) << '\n';
      }
      return o;
    }
    case Command::kKy: {
      const double omega_max = cfg.omega_max > 0.0 ? cfg.omega_max : default_omega_max(p);
      o.body = Json(ky_grid_check(p, omega_max, cfg.grid_points, cfg.tol)).dump(2);
      break;
    }
  }
  o.body += '\n';
  return o;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "spectrum") return Command::kSpectrum;
  if (name == "classify") return Command::kClassify;
  if (name == "check") return Command::kCheck;
  if (name == "solve") return Command::kSolve;
  if (name == "trace") return Command::kTrace;
  if (name == "ky") return Command::kKy;
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    check_config(cfg);
    o = execute(cfg);
  } catch (const Error& e) {
    err << error_to_json(e).dump(2) << '\n';
    return e.code() == ErrorCode::kNotSolvable ? kNotSolvable : kFailure;
  } catch (const std::exception& e) {
    err << error_to_json(Error(ErrorCode::kParseError, e.what())).dump(2) << '\n';
    return kFailure;
  }
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path, std::ios::binary);
    if (!f) {
      err << error_to_json(Error(ErrorCode::kInvalidArgument, "cannot write output file",
                                 cfg.output_path->string()))
                 .dump(2)
          << '\n';
      return kFailure;
    }
    f << o.body;
  } else {
    out << o.body;
  }
  return o.status;
}

}  // namespace rineq::cli
