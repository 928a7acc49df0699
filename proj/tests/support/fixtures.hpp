#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

#include "rineq/krein.hpp"
#include "rineq/linalg.hpp"
#include "rineq/migration.hpp"
#include "rineq/problem.hpp"

namespace rineq::testing {

using Index = Eigen::Index;

// Three states, two inputs, Gamma = diag(-10, 0.1) sign-indefinite.
inline RiccatiProblem indefinite_example() {
  RiccatiProblem p;
  p.A = from_rows({{1, -1, 1}, {0, 1, 1}, {0, 0, 1}});
  p.B = from_rows({{1, 0}, {1, 0}, {0, 1}});
  p.G = from_rows({{6, -2, -2}, {-2, -3, -2}, {-2, -2, -3.9}});
  p.Gamma = from_rows({{-10, 0}, {0, 0.1}});
  return p;
}

// Positive definite perturbation of G with eigenvalues {8, 2, 2}.
inline ComplexMatrix example_zeta() { return from_rows({{4, 2, 2}, {2, 4, 2}, {2, 2, 4}}); }

// Published stabilizing solution for G + zeta = diag(10, 1, 0.1), six digits.
inline ComplexMatrix example_solution() {
  return from_rows({{128.485, -178.389, -7.18338},
                    {-178.389, 259.987, 12.4241},
                    {-7.18338, 12.4241, 1.25879}});
}

inline RiccatiProblem scalar(double a, double b, double g, double gamma) {
  return {from_rows({{a}}), from_rows({{b}}), from_rows({{g}}), from_rows({{gamma}})};
}

// Roots of 2 a h + g - (b^2 / gamma) h^2 = 0. The stabilizing root makes
// a - (b^2 / gamma) h = -sqrt(d) with d = a^2 + g b^2 / gamma > 0. Each root is
// taken from whichever of the two formulas avoids cancellation.
struct ScalarRoots {
  double stabilizing;
  double anti_stabilizing;
  double discriminant;
};

inline ScalarRoots scalar_are_roots(double a, double b, double g, double gamma) {
  const double k = b * b / gamma;
  const double d = a * a + g * k;
  const double r = std::sqrt(d);
  ScalarRoots out{0.0, 0.0, d};
  out.stabilizing = a >= 0.0 ? (a + r) / k : -g / (a - r);
  out.anti_stabilizing = a <= 0.0 ? (a - r) / k : -g / (a + r);
  return out;
}

inline ComplexMatrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  const ComplexMatrix x = random_complex(n, n, rng);
  return 0.5 * (x + x.adjoint());
}

inline ComplexMatrix random_unitary(Index n, std::mt19937_64& rng) {
  return random_complex(n, n, rng).householderQr().householderQ();
}

// Eigenvalues drawn from [lo, hi] with random signs when `indefinite`.
inline ComplexMatrix random_with_spectrum(Index n, double lo, double hi, bool indefinite,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution flip(0.5);
  const ComplexMatrix q = random_unitary(n, rng);
  Eigen::VectorXcd d(n);
  for (Index i = 0; i < n; ++i) d(i) = (indefinite && flip(rng) ? -1.0 : 1.0) * mag(rng);
  const ComplexMatrix h = q * d.asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

inline RiccatiProblem random_problem(Index n, Index m, std::mt19937_64& rng) {
  RiccatiProblem p;
  p.A = random_complex(n, n, rng);
  p.B = random_complex(n, m, rng);
  p.G = random_hermitian(n, rng);
  p.Gamma = random_with_spectrum(m, 0.5, 2.0, true, rng);
  return p;
}

// G back-solved so that H0 satisfies H0 A + A* H0 + G - H0 K H0 = -dG with
// dG positive definite: a solution exists by construction.
inline RiccatiProblem constructed_solvable(Index n, Index m, std::mt19937_64& rng) {
  RiccatiProblem p = random_problem(n, m, rng);
  const ComplexMatrix h0 = random_hermitian(n, rng);
  const ComplexMatrix dg = random_with_spectrum(n, 0.1, 1.0, false, rng);
  const ComplexMatrix gi_bstar = p.Gamma.partialPivLu().solve(p.B.adjoint());
  const ComplexMatrix k = p.B * gi_bstar;
  const ComplexMatrix quad = h0 * p.A + p.A.adjoint() * h0 - h0 * (0.5 * (k + k.adjoint())) * h0;
  const ComplexMatrix g = -quad - dg;
  p.G = 0.5 * (g + g.adjoint());
  return p;
}

// Outcome of the rank-one homotopy on a single canonical axis block at
// omega = 0.5, with a size-1 block at -2 added to odd blocks for inertia balance.
// Only the block at 0.5 is probed.
struct BlockMotion {
  int departed = 0;
  int left_axis_events = 0;
  int stayed_up_first = 0;    // on the axis, above 0.5, first type
  int stayed_down_second = 0;  // on the axis, below 0.5, second type
  int stayed_other = 0;
  bool truncated = false;
};

inline BlockMotion canonical_block_motion(int size, int beta, double t_max = 0.01) {
  constexpr double omega = 0.5;
  std::vector<CanonicalBlock> blocks{{omega, size, beta}};
  if (size % 2 == 1) blocks.push_back({-2.0, 1, -beta});
  const CanonicalHamiltonian ch = make_canonical_hamiltonian(blocks);
  int target = -1;
  for (std::size_t i = 0; i < ch.classification.blocks.size(); ++i) {
    if (ch.classification.blocks[i].omega == omega) target = static_cast<int>(i);
  }
  const ProbeMatrix probe = construct_probe(ch.pair, ch.classification, 1.0, {target});
  TraceOptions options;
  options.axis_tol = 1e-4;
  const TraceResult trace = trace_eigenvalues(ch.pair, probe, t_max, 3, options);

  BlockMotion out;
  out.truncated = trace.truncated;
  const std::size_t last = trace.t_grid.size() - 1;
  for (std::size_t i = 0; i < trace.positions[0].size(); ++i) {
    if (std::abs(trace.positions[0][i] - Complex(0.0, omega)) > 0.05) continue;
    if (!trace.on_axis[last][i]) {
      ++out.departed;
      continue;
    }
    const double moved = trace.positions[last][i].imag() - omega;
    const int type = trace.types[last][i];
    if (moved > 0 && type == 1) {
      ++out.stayed_up_first;
    } else if (moved < 0 && type == -1) {
      ++out.stayed_down_second;
    } else {
      ++out.stayed_other;
    }
  }
  for (const TraceEvent& e : trace.events) {
    if (e.kind == TraceEventKind::kLeftAxis && std::abs(e.frequencies[0] - omega) < 0.05) {
      ++out.left_axis_events;
    }
  }
  return out;
}

}  // namespace rineq::testing
