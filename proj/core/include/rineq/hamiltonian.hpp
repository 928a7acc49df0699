#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rineq/linalg.hpp"
#include "rineq/problem.hpp"

namespace rineq {

/// Axis threshold relative to |R|. Looser than kDefaultTol because QR
/// iteration scatters a multiple eigenvalue into a cloud.
inline constexpr double kDefaultAxisTol = 1e-7;

/// R with J R Hermitian, and J = [[0, -I], [I, 0]].
struct HamiltonianPair {
  ComplexMatrix R;
  ComplexMatrix J;
  Eigen::Index n = 0;
  std::optional<RiccatiProblem> source;

  /// Wraps an arbitrary 2n x 2n matrix; throws kNotHermitian when J R is not
  /// Hermitian to tol * |R|.
  static HamiltonianPair from_matrix(ComplexMatrix R, double tol = kDefaultTol);
};

/// R = [[A, -B Gamma^{-1} B*], [-G, -A*]]. Throws kSingularGamma.
HamiltonianPair build_hamiltonian(const RiccatiProblem& p, double tol = kDefaultTol);

/// |J R - (J R)*| / |R|
double hamiltonian_defect(const ComplexMatrix& R);

struct AxisGroup {
  double omega = 0.0;      // mean imaginary part of the members
  int multiplicity = 0;    // algebraic multiplicity = member count
  std::vector<int> members;  // indices into SpectrumReport::eigenvalues

  friend bool operator==(const AxisGroup&, const AxisGroup&) = default;
};

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  // (lambda, -conj(lambda)) index pairs; an axis eigenvalue is paired with
  // itself. Off-axis pairs list the left half-plane member first.
  std::vector<std::pair<int, int>> pairing;
  std::vector<AxisGroup> axis_groups;  // ascending omega
  int off_axis_count = 0;
  double axis_tol = kDefaultAxisTol;
  double norm = 0.0;  // Frobenius norm of R

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

/// Eigenvalues with |Re| <= axis_tol * |R| are axis eigenvalues, clustered by
/// single linkage with radius 10 * axis_tol * |R|. Off-axis eigenvalues are
/// paired greedily from the largest |Re| inward within 100 * axis_tol * |R|;
/// failure throws kPairingFailure.
SpectrumReport spectrum(const HamiltonianPair& hp, double axis_tol = kDefaultAxisTol,
                        double tol = kDefaultTol);

}  // namespace rineq
