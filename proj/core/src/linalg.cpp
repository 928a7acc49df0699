#include "rineq/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "rineq/error.hpp"

namespace rineq {

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
  ComplexMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged row list", "from_rows");
    }
    Eigen::Index j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

void require_finite(const ComplexMatrix& m, std::string_view context) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries", std::string(context));
  }
}

void require_square(const ComplexMatrix& m, std::string_view context) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()),
                std::string(context));
  }
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * m.norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix symplectic_unit(Eigen::Index n) {
  ComplexMatrix j = ComplexMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -ComplexMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = ComplexMatrix::Identity(n, n);
  return j;
}

HermitianEigen eigen_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "eigen_hermitian");
  require_finite(m, "eigen_hermitian");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::kNotHermitian, "matrix is not Hermitian within tolerance",
                "eigen_hermitian");
  }
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvergence, "Hermitian eigensolver failed", "eigen_hermitian");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix stable_invariant_basis(const ComplexMatrix& m, HalfPlane half, double tol) {
  SchurForm form = eigen_general(m, tol);
  const double band = tol * m.norm();
  std::vector<bool> select(form.eigenvalues.size());
  for (std::size_t i = 0; i < select.size(); ++i) {
    const double re = form.eigenvalues[i].real();
    if (std::abs(re) <= band) {
      throw Error(ErrorCode::kAxisEigenvalue,
                  "eigenvalue " + std::to_string(re) + (form.eigenvalues[i].imag() < 0 ? "" : "+") +
                      std::to_string(form.eigenvalues[i].imag()) + "i lies in the axis band",
                  "stable_invariant_basis");
    }
    select[i] = (half == HalfPlane::kLeft) ? re < 0.0 : re > 0.0;
  }
  const Eigen::Index k = reorder_schur(form, std::move(select));
  return form.unitary.leftCols(k);
}

Inertia inertia_of(const ComplexMatrix& m, double tol) {
  const HermitianEigen eig = eigen_hermitian(m, tol);
  const double band = tol * m.norm();
  Inertia in;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double v = eig.eigenvalues(i);
    if (v > band) {
      ++in.positive;
    } else if (v < -band) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

ComplexMatrix null_space(const ComplexMatrix& m, double threshold) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::Index numerical_rank(const ComplexMatrix& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
  qr.setThreshold(relative_threshold);
  return qr.rank();
}

std::vector<Complex> eigenvalues_of(const ComplexMatrix& m, double tol) {
  return eigen_general(m, tol).eigenvalues;
}

}  // namespace rineq
