#pragma once

#include <optional>
#include <vector>

#include "rineq/linalg.hpp"

namespace rineq {

/// The data of HA + A*H + G - H B Gamma^{-1} B* H < 0.
/// A is n x n, B is n x m, G is n x n Hermitian, Gamma is m x m Hermitian and
/// invertible.
struct RiccatiProblem {
  ComplexMatrix A;
  ComplexMatrix B;
  ComplexMatrix G;
  ComplexMatrix Gamma;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return B.cols(); }
};

/// Controllability and imaginary-axis eigenvalues of A are reported, never
/// enforced; the Hamiltonian analysis does not need them.
struct ValidationReport {
  bool hermitian_ok = false;
  bool gamma_invertible = false;
  bool controllable = false;
  std::vector<double> a_axis_eigenvalues;  // frequencies omega with i*omega an eigenvalue of A

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Throws kDimensionMismatch, kNotHermitian (G or Gamma) or kSingularGamma.
ValidationReport validate(const RiccatiProblem& p, double tol = kDefaultTol);

/// B Gamma^{-1} B*, symmetrized.
ComplexMatrix gain_matrix(const RiccatiProblem& p);

/// Absolute stability form HA + A*H + G + H B Gamma^{-1} B* H < 0 with
/// Gamma > 0, rewritten in standard form (Gamma_std = -Gamma).
RiccatiProblem from_absolute_stability(const ComplexMatrix& A, const ComplexMatrix& B,
                                       const ComplexMatrix& G, const ComplexMatrix& gamma_pos,
                                       double tol = kDefaultTol);

/// H-infinity form HA + A*H + G + H Bw Gw^{-1} Bw* H - H Bu Gu^{-1} Bu* H < 0,
/// rewritten with B = [Bw | Bu] and Gamma = diag(-Gw, Gu). Bu may have zero
/// columns.
RiccatiProblem from_hinf(const ComplexMatrix& A, const ComplexMatrix& B_w,
                         const ComplexMatrix& B_u, const ComplexMatrix& G,
                         const ComplexMatrix& gamma_w, const ComplexMatrix& gamma_u,
                         double tol = kDefaultTol);

/// pi(i omega) = Gamma + B* (i omega I + A*)^{-1} G (A - i omega I)^{-1} B.
/// Throws kResonantFrequency when i omega is an eigenvalue of A.
ComplexMatrix freq_pi(const RiccatiProblem& p, double omega, double tol = kDefaultTol);

/// 10 |A| + 1
double default_omega_max(const RiccatiProblem& p);

inline constexpr int kDefaultGridPoints = 2048;

struct GridMinimum {
  double omega = 0.0;
  double abs_det = 0.0;

  friend bool operator==(const GridMinimum&, const GridMinimum&) = default;
};

/// Classical frequency-domain diagnostic. It is never used by the
/// solvability verdict.
struct KYGridReport {
  double omega_max = 0.0;
  int grid_points = 0;
  double min_abs_det = 0.0;
  std::optional<double> argmin_omega;  // empty: the minimum is attained at infinity
  double abs_det_at_infinity = 0.0;
  bool negative_definite = false;  // pi(i omega) < 0 at every evaluated node and at infinity
  bool positive_definite = false;
  std::vector<GridMinimum> local_minima;  // interior nodes where |det pi| has a local minimum
  std::vector<double> skipped;            // resonant nodes

  friend bool operator==(const KYGridReport&, const KYGridReport&) = default;
};

/// Evaluates det pi(i omega) on grid_points equispaced nodes of
/// [-omega_max, omega_max] plus the point at infinity (pi = Gamma).
KYGridReport ky_grid_check(const RiccatiProblem& p, double omega_max,
                           int grid_points = kDefaultGridPoints, double tol = kDefaultTol);

}  // namespace rineq
