#pragma once

#include <complex>
#include <compare>
#include <initializer_list>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rineq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used by every operation unless the caller overrides it.
/// Norms are Frobenius norms of the input.
inline constexpr double kDefaultTol = 1e-9;

/// Builds a matrix from nested rows, e.g. `from_rows({{1, 2}, {3, 4}})`.
ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

/// Throws Error(kNonFinite) if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view context);

/// Throws Error(kDimensionMismatch) unless `m` is square.
void require_square(const ComplexMatrix& m, std::string_view context);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

/// (m + m*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// The symplectic unit [[0, -I], [I, 0]] of size 2n.
ComplexMatrix symplectic_unit(Eigen::Index n);

/// Complex Schur decomposition m = unitary * triangular * unitary^*.
struct SchurForm {
  ComplexMatrix unitary;
  ComplexMatrix triangular;
  std::vector<Complex> eigenvalues;  // diagonal of `triangular`, in order
};

/// Householder reduction to Hessenberg form followed by single-shift complex
/// QR iteration. The iteration budget is 50 sweeps per row. The result is
/// rejected with kNonConvergence when the budget runs out or when the
/// reconstruction error exceeds 100 * tol * |m|.
SchurForm eigen_general(const ComplexMatrix& m, double tol = kDefaultTol);

/// Moves the diagonal entries flagged in `select` (indexed by current diagonal
/// position) to the leading block by adjacent swaps, updating all fields of
/// `form`. Returns the number of selected entries.
Eigen::Index reorder_schur(SchurForm& form, std::vector<bool> select);

struct HermitianEigen {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, columns match `eigenvalues`
};

/// Throws kNotHermitian when |m - m^*| > tol * |m|.
HermitianEigen eigen_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

enum class HalfPlane { kLeft, kRight };

/// Orthonormal basis of the invariant subspace belonging to the eigenvalues
/// in the requested open half-plane, obtained by reordering the Schur form.
/// Throws kAxisEigenvalue when some eigenvalue has |Re| <= tol * |m|.
ComplexMatrix stable_invariant_basis(const ComplexMatrix& m, HalfPlane half,
                                     double tol = kDefaultTol);

struct Inertia {
  int positive = 0;
  int zero = 0;
  int negative = 0;

  int dimension() const { return positive + zero + negative; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sign counts of the eigenvalues of a Hermitian matrix; eigenvalues within
/// tol * |m| of zero count as zero.
Inertia inertia_of(const ComplexMatrix& m, double tol = kDefaultTol);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix& m);

double spectral_norm(const ComplexMatrix& m);

/// Orthonormal basis of the numerical null space: right singular vectors whose
/// singular value is <= threshold.
ComplexMatrix null_space(const ComplexMatrix& m, double threshold);

/// Rank of a column-pivoted QR factorization with the given relative threshold.
Eigen::Index numerical_rank(const ComplexMatrix& m, double relative_threshold);

/// Spectrum as a plain list (convenience over eigen_general).
std::vector<Complex> eigenvalues_of(const ComplexMatrix& m, double tol = kDefaultTol);

}  // namespace rineq
