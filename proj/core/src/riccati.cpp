#include "rineq/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include <Eigen/LU>

#include "rineq/error.hpp"
#include "rineq/hamiltonian.hpp"
#include "rineq/migration.hpp"

namespace rineq {
namespace {

using Index = Eigen::Index;

std::vector<Complex> closed_loop(const RiccatiProblem& p, const ComplexMatrix& H, double tol) {
  if (p.n() == 0) return {};
  return eigenvalues_of(p.A - gain_matrix(p) * H, tol);
}

bool in_half_plane(const std::vector<Complex>& ev, SolutionMode mode) {
  return std::all_of(ev.begin(), ev.end(), [mode](const Complex& z) {
    return mode == SolutionMode::kStabilizing ? z.real() < 0.0 : z.real() > 0.0;
  });
}

RiccatiProblem with_delta(const RiccatiProblem& p, const ComplexMatrix& dg) {
  RiccatiProblem q = p;
  q.G = p.G + dg;
  return q;
}

bool axis_free(const RiccatiProblem& p, const ComplexMatrix& dg, const KreinOptions& k) {
  try {
    return spectrum(build_hamiltonian(with_delta(p, dg), k.tol), k.axis_tol, k.tol)
        .axis_groups.empty();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPairingFailure || e.code() == ErrorCode::kNonConvergence) {
      return false;
    }
    throw;
  }
}

// 1e-8 * s, 10^(1/2) * 1e-8 * s, ..., 1e4 * s
std::vector<double> epsilon_grid(const RiccatiProblem& p) {
  const double s = std::max(p.G.norm(), 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 24; ++i) grid.push_back(1e-8 * s * std::pow(10.0, 0.5 * i));
  return grid;
}

void require_search_allowed(const RiccatiProblem& p, const KreinOptions& k) {
  const SolvabilityVerdict v = verdict(p, k);
  if (v.status == VerdictStatus::kIndeterminate) {
    throw Error(ErrorCode::kIndeterminate, "solvability verdict is indeterminate: " + v.diagnostic,
                "find_delta_g");
  }
  if (!v.solvable) {
    throw Error(ErrorCode::kNotSolvable,
                "s(omega) < 0 at omega = " + std::to_string(v.witness.value_or(0.0)),
                "find_delta_g");
  }
}

DeltaGResult scan_identity(const RiccatiProblem& p, const ComplexMatrix& base,
                           const DeltaGOptions& options, DeltaGStrategy strategy) {
  const Index n = p.n();
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  const std::vector<double> grid = epsilon_grid(p);
  DeltaGResult r;
  r.strategy = strategy;
  std::size_t first = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ++r.iterations;
    if (axis_free(p, base + grid[i] * eye, options.krein)) {
      first = i;
      break;
    }
  }
  if (first == grid.size()) {
    throw Error(ErrorCode::kSearchExhausted,
                "no epsilon in the scan makes the perturbed Hamiltonian axis-free",
                "find_delta_g");
  }
  double chosen = grid[first];
  if (first > 0) {
    // geometric bisection for the boundary, then step back out by a factor 2
    double lo = grid[first - 1];
    double hi = grid[first];
    for (int it = 0; it < options.bisection_steps && hi / lo > 1.001; ++it) {
      ++r.iterations;
      const double mid = std::sqrt(lo * hi);
      if (axis_free(p, base + mid * eye, options.krein)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double candidate = std::min(2.0 * hi, grid[first]);
    ++r.iterations;
    if (candidate < grid[first] && axis_free(p, base + candidate * eye, options.krein)) {
      chosen = candidate;
    }
  }
  r.delta_g = base + chosen * eye;
  r.axis_free = true;
  return r;
}

DeltaGResult migration_delta(const RiccatiProblem& p, const DeltaGOptions& options) {
  const HamiltonianPair hp = build_hamiltonian(p, options.krein.tol);
  const AxisClassification c = classify(hp, options.krein);
  const Index n = p.n();
  ComplexMatrix base = ComplexMatrix::Zero(n, n);
  int steps = 0;
  if (!c.blocks.empty()) {
    const ProbeMatrix probe = construct_probe(hp, c, options.migration_delta);
    TraceOptions to;
    to.axis_tol = options.krein.axis_tol;
    to.tol = options.krein.tol;
    const TraceResult trace =
        trace_eigenvalues(hp, probe, 1.0, std::max(options.migration_steps, 2), to);
    steps = static_cast<int>(trace.t_grid.size());
    base = hermitian_part(trace.perturbation.bottomRightCorner(n, n));
  }
  DeltaGResult r = scan_identity(p, base, options, DeltaGStrategy::kMigration);
  r.iterations += steps;
  return r;
}

ComplexMatrix random_direction(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix x(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) x(i, j) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix d = x * x.adjoint();
  d += 0.1 * d.norm() * ComplexMatrix::Identity(n, n);
  return d / d.norm() * std::sqrt(static_cast<double>(n));
}

// F* X + X F = C via the Schur form F = U T U*: with Y = U* X U the equation
// T* Y + Y T = U* C U is solved entry by entry in row-major order. Empty when
// conj(lambda_i) + lambda_j vanishes for some pair.
std::optional<ComplexMatrix> solve_lyapunov(const ComplexMatrix& f, const ComplexMatrix& c,
                                            double tol) {
  const SchurForm sf = eigen_general(f, tol);
  const ComplexMatrix& t = sf.triangular;
  const ComplexMatrix rhs = sf.unitary.adjoint() * c * sf.unitary;
  const Index n = f.rows();
  const double floor = tol * std::max(t.norm(), 1.0);
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Complex acc = rhs(i, j);
      for (Index k = 0; k < i; ++k) acc -= std::conj(t(k, i)) * y(k, j);
      for (Index k = 0; k < j; ++k) acc -= y(i, k) * t(k, j);
      const Complex denom = std::conj(t(i, i)) + t(j, j);
      if (std::abs(denom) <= floor) return std::nullopt;
      y(i, j) = acc / denom;
    }
  }
  return sf.unitary * y * sf.unitary.adjoint();
}

// Newton steps X solving (A - K H)* X + X (A - K H) = -L(H). Forming
// Psi1 X1^{-1} loses accuracy in proportion to |H|; a step is kept only when
// it lowers the residual and preserves the closed-loop half-plane.
ComplexMatrix refine(const RiccatiProblem& p, ComplexMatrix h, SolutionMode mode, double tol) {
  const ComplexMatrix k = gain_matrix(p);
  double residual = riccati_residual(p, h).norm();
  for (int step = 0; step < 3 && residual > 0.0; ++step) {
    const ComplexMatrix f = p.A - k * h;
    std::optional<ComplexMatrix> x;
    try {
      x = solve_lyapunov(f, -riccati_residual(p, h), tol);
    } catch (const Error&) {
      break;
    }
    if (!x) break;
    const ComplexMatrix next = hermitian_part(h + *x);
    const double r = riccati_residual(p, next).norm();
    if (!(r < residual) || !in_half_plane(closed_loop(p, next, tol), mode)) break;
    h = next;
    residual = r;
  }
  return h;
}

}  // namespace

ComplexMatrix riccati_residual(const RiccatiProblem& p, const ComplexMatrix& H) {
  return H * p.A + p.A.adjoint() * H + p.G - H * gain_matrix(p) * H;
}

SolutionCertificate solve_are(const RiccatiProblem& p, SolutionMode mode, double tol) {
  const HamiltonianPair hp = build_hamiltonian(p, tol);
  const Index n = p.n();
  const ComplexMatrix z = stable_invariant_basis(
      hp.R, mode == SolutionMode::kStabilizing ? HalfPlane::kLeft : HalfPlane::kRight, tol);
  if (z.cols() != n) {
    throw Error(ErrorCode::kSingularX1,
                "invariant subspace has dimension " + std::to_string(z.cols()) + ", expected " +
                    std::to_string(n),
                "solve_are");
  }
  SolutionCertificate cert;
  cert.mode = mode;
  if (n == 0) return cert;

  const ComplexMatrix x1 = z.topRows(n);
  const ComplexMatrix psi1 = z.bottomRows(n);
  const RealVector s = singular_values(x1);
  cert.x1_condition = s(n - 1) > 0.0 ? s(0) / s(n - 1) : std::numeric_limits<double>::infinity();
  if (!(cert.x1_condition <= 1.0 / (100.0 * tol))) {
    throw Error(ErrorCode::kSingularX1,
                "X1 has condition number " + std::to_string(cert.x1_condition), "solve_are");
  }
  // H = Psi1 X1^{-1}, i.e. X1* H* = Psi1*
  const ComplexMatrix h_adj = x1.adjoint().partialPivLu().solve(psi1.adjoint());
  cert.H = refine(p, hermitian_part(h_adj.adjoint()), mode, tol);
  cert.residual_norm = riccati_residual(p, cert.H).norm();
  const InequalityCheck check = verify_inequality(p, cert.H, tol);
  cert.closed_loop_eigenvalues = check.closed_loop;
  cert.inequality_margin = check.margin;
  return cert;
}

InequalityCheck verify_inequality(const RiccatiProblem& p, const ComplexMatrix& H, double tol) {
  if (H.rows() != p.n() || H.cols() != p.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "H does not match A", "verify_inequality");
  }
  if (!is_hermitian(H, tol)) {
    throw Error(ErrorCode::kNotHermitian, "H is not Hermitian", "verify_inequality");
  }
  InequalityCheck out;
  if (p.n() == 0) return out;
  const ComplexMatrix left = hermitian_part(riccati_residual(p, H));
  out.margin = eigen_hermitian(left, 1.0).eigenvalues.maxCoeff();
  const double hn = H.norm();
  const double scale = p.G.norm() + 2.0 * hn * p.A.norm() + hn * hn * gain_matrix(p).norm();
  out.satisfied = out.margin < -tol * scale;
  out.closed_loop = closed_loop(p, H, tol);
  return out;
}

DeltaGResult find_delta_g(const RiccatiProblem& p, const DeltaGOptions& options) {
  validate(p, options.krein.tol);
  require_search_allowed(p, options.krein);
  switch (options.strategy) {
    case DeltaGStrategy::kUser: {
      if (!options.user_delta_g) {
        throw Error(ErrorCode::kInvalidArgument, "user strategy needs a Delta G",
                    "find_delta_g");
      }
      const ComplexMatrix& dg = *options.user_delta_g;
      if (dg.rows() != p.n() || dg.cols() != p.n()) {
        throw Error(ErrorCode::kDimensionMismatch, "Delta G does not match G", "find_delta_g");
      }
      const HermitianEigen eig = eigen_hermitian(dg, options.krein.tol);
      if (p.n() > 0 && !(eig.eigenvalues(0) > 0.0)) {
        throw Error(ErrorCode::kNotPositiveDefinite, "Delta G is not positive definite",
                    "find_delta_g");
      }
      DeltaGResult r;
      r.strategy = DeltaGStrategy::kUser;
      r.delta_g = dg;
      r.iterations = 1;
      r.axis_free = axis_free(p, dg, options.krein);
      return r;
    }
    case DeltaGStrategy::kMigration:
      return migration_delta(p, options);
    case DeltaGStrategy::kScaledIdentity:
      break;
  }
  return scan_identity(p, ComplexMatrix::Zero(p.n(), p.n()), options,
                       DeltaGStrategy::kScaledIdentity);
}

SolutionCertificate solve_inequality(const RiccatiProblem& p, SolutionMode mode,
                                     const SolveOptions& options) {
  const KreinOptions& k = options.delta_g.krein;
  validate(p, k.tol);
  require_search_allowed(p, k);
  const Index n = p.n();

  std::vector<ComplexMatrix> candidates;
  if (options.delta_g.strategy == DeltaGStrategy::kUser) {
    candidates.push_back(find_delta_g(p, options.delta_g).delta_g);
  } else {
    const std::vector<double> grid = epsilon_grid(p);
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    try {
      const DeltaGResult first = find_delta_g(p, options.delta_g);
      candidates.push_back(first.delta_g);
      if (first.strategy == DeltaGStrategy::kScaledIdentity) {
        const double eps = first.delta_g.norm() / std::sqrt(static_cast<double>(std::max<Index>(n, 1)));
        for (double e : grid) {
          if (e > eps) candidates.push_back(e * eye);
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSearchExhausted) throw;
    }
    if (options.delta_g.strategy == DeltaGStrategy::kScaledIdentity) {
      try {
        DeltaGOptions mig = options.delta_g;
        mig.strategy = DeltaGStrategy::kMigration;
        candidates.push_back(find_delta_g(p, mig).delta_g);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSearchExhausted && e.code() != ErrorCode::kMissingChainBasis) {
          throw;
        }
      }
    }
    std::mt19937_64 rng(options.seed);
    for (int d = 0; d < options.random_directions; ++d) {
      const ComplexMatrix dir = random_direction(n, rng);
      for (double e : grid) candidates.push_back(e * dir);
    }
  }

  for (const ComplexMatrix& dg : candidates) {
    try {
      SolutionCertificate cert = solve_are(with_delta(p, dg), mode, k.tol);
      const InequalityCheck check = verify_inequality(p, cert.H, k.tol);
      if (!check.satisfied || !in_half_plane(check.closed_loop, mode)) continue;
      cert.inequality_margin = check.margin;
      cert.closed_loop_eigenvalues = check.closed_loop;
      cert.delta_g = dg;
      return cert;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSingularX1 && e.code() != ErrorCode::kAxisEigenvalue &&
          e.code() != ErrorCode::kNonConvergence) {
        throw;
      }
    }
  }
  throw Error(ErrorCode::kSearchExhausted,
              "no candidate Delta G produced a verified solution of the inequality",
              "solve_inequality");
}

}  // namespace rineq
