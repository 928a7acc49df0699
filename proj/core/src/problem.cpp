#include "rineq/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "rineq/error.hpp"

namespace rineq {
namespace {

using Index = Eigen::Index;

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_shape(const ComplexMatrix& m, Index rows, Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(name) + " is " + shape(m) + ", expected " + std::to_string(rows) +
                    "x" + std::to_string(cols),
                name);
  }
}

void require_positive_definite(const ComplexMatrix& m, double tol, const char* name) {
  require_square(m, name);
  if (m.rows() == 0) return;
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::kNotHermitian, std::string(name) + " is not Hermitian", name);
  }
  const HermitianEigen eig = eigen_hermitian(m, tol);
  if (!(eig.eigenvalues(0) > tol * m.norm())) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                std::string(name) + " has smallest eigenvalue " +
                    std::to_string(eig.eigenvalues(0)),
                name);
  }
}

void check_dimensions(const RiccatiProblem& p) {
  require_square(p.A, "A");
  const Index n = p.A.rows();
  if (p.B.rows() != n) require_shape(p.B, n, p.B.cols(), "B");
  require_shape(p.G, n, n, "G");
  require_shape(p.Gamma, p.m(), p.m(), "Gamma");
  for (const auto* mat : {&p.A, &p.B, &p.G, &p.Gamma}) require_finite(*mat, "problem");
}

bool controllable(const ComplexMatrix& A, const ComplexMatrix& B, double tol) {
  const Index n = A.rows();
  const Index m = B.cols();
  if (n == 0) return true;
  if (m == 0) return false;
  ComplexMatrix krylov(n, n * m);
  ComplexMatrix block = B;
  for (Index k = 0; k < n; ++k) {
    krylov.middleCols(k * m, m) = block;
    block = A * block;
  }
  return numerical_rank(krylov, tol) == n;
}

bool resonant(const ComplexMatrix& shifted, double threshold) {
  const RealVector s = singular_values(shifted);
  return s.size() > 0 && s(s.size() - 1) <= threshold;
}

double resonance_threshold(const RiccatiProblem& p, double tol) {
  return tol * std::max(p.A.norm(), 1.0);
}

ComplexMatrix pi_unchecked(const RiccatiProblem& p, double omega) {
  const Index n = p.n();
  const ComplexMatrix shifted = p.A - Complex(0.0, omega) * ComplexMatrix::Identity(n, n);
  const ComplexMatrix x = shifted.partialPivLu().solve(p.B);
  return hermitian_part(p.Gamma + x.adjoint() * p.G * x);
}

enum class Definiteness { kNegative, kPositive, kIndefinite };

Definiteness definiteness(const ComplexMatrix& pi, double tol) {
  if (pi.rows() == 0) return Definiteness::kIndefinite;
  const HermitianEigen eig = eigen_hermitian(pi, 1.0);
  const double band = tol * std::max(pi.norm(), 1.0);
  if (eig.eigenvalues.maxCoeff() < -band) return Definiteness::kNegative;
  if (eig.eigenvalues.minCoeff() > band) return Definiteness::kPositive;
  return Definiteness::kIndefinite;
}

}  // namespace

ValidationReport validate(const RiccatiProblem& p, double tol) {
  check_dimensions(p);
  if (!is_hermitian(p.G, tol)) throw Error(ErrorCode::kNotHermitian, "G is not Hermitian", "G");
  if (!is_hermitian(p.Gamma, tol)) {
    throw Error(ErrorCode::kNotHermitian, "Gamma is not Hermitian", "Gamma");
  }
  if (p.m() > 0) {
    const RealVector s = singular_values(p.Gamma);
    if (!(s(s.size() - 1) > tol * p.Gamma.norm())) {
      throw Error(ErrorCode::kSingularGamma,
                  "smallest singular value of Gamma is " + std::to_string(s(s.size() - 1)),
                  "Gamma");
    }
  }

  ValidationReport report;
  report.hermitian_ok = true;
  report.gamma_invertible = true;
  report.controllable = controllable(p.A, p.B, tol);
  if (p.n() > 0) {
    const double band = 100.0 * tol * p.A.norm();
    for (const Complex& z : eigenvalues_of(p.A, tol)) {
      if (std::abs(z.real()) <= band) report.a_axis_eigenvalues.push_back(z.imag());
    }
    std::sort(report.a_axis_eigenvalues.begin(), report.a_axis_eigenvalues.end());
  }
  return report;
}

ComplexMatrix gain_matrix(const RiccatiProblem& p) {
  const Index n = p.n();
  if (p.m() == 0) return ComplexMatrix::Zero(n, n);
  const ComplexMatrix gi_bstar = p.Gamma.partialPivLu().solve(p.B.adjoint());
  return hermitian_part(p.B * gi_bstar);
}

RiccatiProblem from_absolute_stability(const ComplexMatrix& A, const ComplexMatrix& B,
                                       const ComplexMatrix& G, const ComplexMatrix& gamma_pos,
                                       double tol) {
  require_positive_definite(gamma_pos, tol, "Gamma_pos");
  RiccatiProblem p{A, B, G, -gamma_pos};
  check_dimensions(p);
  return p;
}

RiccatiProblem from_hinf(const ComplexMatrix& A, const ComplexMatrix& B_w,
                         const ComplexMatrix& B_u, const ComplexMatrix& G,
                         const ComplexMatrix& gamma_w, const ComplexMatrix& gamma_u, double tol) {
  require_square(A, "A");
  const Index n = A.rows();
  require_shape(B_w, n, B_w.cols(), "B_w");
  require_shape(B_u, n, B_u.cols(), "B_u");
  require_shape(gamma_w, B_w.cols(), B_w.cols(), "Gamma_w");
  require_shape(gamma_u, B_u.cols(), B_u.cols(), "Gamma_u");
  require_positive_definite(gamma_w, tol, "Gamma_w");
  require_positive_definite(gamma_u, tol, "Gamma_u");

  const Index mw = B_w.cols();
  const Index mu = B_u.cols();
  RiccatiProblem p;
  p.A = A;
  p.G = G;
  p.B.resize(n, mw + mu);
  p.B << B_w, B_u;
  p.Gamma = ComplexMatrix::Zero(mw + mu, mw + mu);
  p.Gamma.topLeftCorner(mw, mw) = -gamma_w;
  p.Gamma.bottomRightCorner(mu, mu) = gamma_u;
  check_dimensions(p);
  return p;
}

ComplexMatrix freq_pi(const RiccatiProblem& p, double omega, double tol) {
  check_dimensions(p);
  const Index n = p.n();
  const ComplexMatrix shifted = p.A - Complex(0.0, omega) * ComplexMatrix::Identity(n, n);
  if (n > 0 && resonant(shifted, resonance_threshold(p, tol))) {
    throw Error(ErrorCode::kResonantFrequency,
                "i*" + std::to_string(omega) + " is an eigenvalue of A", "freq_pi");
  }
  return pi_unchecked(p, omega);
}

double default_omega_max(const RiccatiProblem& p) { return 10.0 * p.A.norm() + 1.0; }

KYGridReport ky_grid_check(const RiccatiProblem& p, double omega_max, int grid_points,
                           double tol) {
  check_dimensions(p);
  if (grid_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid_points must be at least 2", "ky_grid_check");
  }
  if (!(omega_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "omega_max must be positive", "ky_grid_check");
  }

  KYGridReport report;
  report.omega_max = omega_max;
  report.grid_points = grid_points;

  const Definiteness at_infinity = definiteness(hermitian_part(p.Gamma), tol);
  report.abs_det_at_infinity = std::abs(p.Gamma.determinant());
  report.min_abs_det = report.abs_det_at_infinity;
  bool negative = at_infinity == Definiteness::kNegative;
  bool positive = at_infinity == Definiteness::kPositive;

  const auto count = static_cast<std::size_t>(grid_points);
  std::vector<double> values(count, std::numeric_limits<double>::quiet_NaN());
  const double threshold = resonance_threshold(p, tol);
  const double step = 2.0 * omega_max / static_cast<double>(grid_points - 1);
  std::vector<double> nodes(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double omega = k + 1 == count ? omega_max : -omega_max + static_cast<double>(k) * step;
    nodes[k] = omega;
    const ComplexMatrix shifted =
        p.A - Complex(0.0, omega) * ComplexMatrix::Identity(p.n(), p.n());
    if (p.n() > 0 && resonant(shifted, threshold)) {
      report.skipped.push_back(omega);
      continue;
    }
    const ComplexMatrix pi = pi_unchecked(p, omega);
    values[k] = std::abs(pi.determinant());
    const Definiteness d = definiteness(pi, tol);
    negative = negative && d == Definiteness::kNegative;
    positive = positive && d == Definiteness::kPositive;
    if (values[k] < report.min_abs_det) {
      report.min_abs_det = values[k];
      report.argmin_omega = omega;
    }
  }
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double v = values[k];
    if (std::isnan(v) || std::isnan(values[k - 1]) || std::isnan(values[k + 1])) continue;
    if (v < values[k - 1] && v <= values[k + 1]) report.local_minima.push_back({nodes[k], v});
  }
  report.negative_definite = negative;
  report.positive_definite = positive;
  return report;
}

}  // namespace rineq
