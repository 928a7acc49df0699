#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rineq/krein.hpp"
#include "rineq/problem.hpp"

namespace rineq {

enum class SolutionMode { kStabilizing, kAntiStabilizing };

struct SolutionCertificate {
  ComplexMatrix H;
  SolutionMode mode = SolutionMode::kStabilizing;
  double residual_norm = 0.0;  // of the equation actually solved
  std::vector<Complex> closed_loop_eigenvalues;  // spectrum of A - B Gamma^{-1} B* H
  double inequality_margin = 0.0;  // against the original G; < 0 certifies H
  double x1_condition = 0.0;
  std::optional<ComplexMatrix> delta_g;  // perturbation of G used to reach H

  friend bool operator==(const SolutionCertificate&, const SolutionCertificate&) = default;
};

/// H A + A* H + G - H B Gamma^{-1} B* H
ComplexMatrix riccati_residual(const RiccatiProblem& p, const ComplexMatrix& H);

/// H = Psi_1 X_1^{-1} from the stable (stabilizing) or antistable invariant
/// subspace col(X_1, Psi_1) of R. Throws kAxisEigenvalue or kSingularX1
/// (cond X_1 > 1 / (100 tol)). At most three Newton steps on the residual
/// follow, each kept only if it lowers the residual norm.
SolutionCertificate solve_are(const RiccatiProblem& p, SolutionMode mode,
                              double tol = kDefaultTol);

struct InequalityCheck {
  double margin = 0.0;  // largest eigenvalue of the symmetrized left side
  bool satisfied = false;
  std::vector<Complex> closed_loop;
};

/// satisfied = margin < -tol * (|G| + 2 |H| |A| + |H|^2 |B Gamma^{-1} B*|).
InequalityCheck verify_inequality(const RiccatiProblem& p, const ComplexMatrix& H,
                                  double tol = kDefaultTol);

enum class DeltaGStrategy { kMigration, kScaledIdentity, kUser };

struct DeltaGResult {
  ComplexMatrix delta_g;
  bool axis_free = false;
  int iterations = 0;
  DeltaGStrategy strategy = DeltaGStrategy::kScaledIdentity;

  friend bool operator==(const DeltaGResult&, const DeltaGResult&) = default;
};

struct DeltaGOptions {
  DeltaGStrategy strategy = DeltaGStrategy::kScaledIdentity;
  std::optional<ComplexMatrix> user_delta_g;
  KreinOptions krein;
  int bisection_steps = 60;
  int migration_steps = 200;
  double migration_delta = 1.0;
};

/// Positive definite Delta G such that the Hamiltonian of (A, B, G + Delta G,
/// Gamma) has no imaginary eigenvalues. Throws kNotSolvable or kIndeterminate
/// when the verdict rules the search out, kSearchExhausted when the budget
/// runs out.
DeltaGResult find_delta_g(const RiccatiProblem& p, const DeltaGOptions& options = {});

struct SolveOptions {
  DeltaGOptions delta_g;
  int random_directions = 16;
  std::uint64_t seed = 0x5eed;
};

/// verdict -> Delta G -> solve_are on the perturbed problem -> check against
/// the original problem. Only a certificate with inequality_margin < 0 and the
/// mode's half-plane condition is returned; otherwise kSearchExhausted.
SolutionCertificate solve_inequality(const RiccatiProblem& p, SolutionMode mode,
                                     const SolveOptions& options = {});

}  // namespace rineq
