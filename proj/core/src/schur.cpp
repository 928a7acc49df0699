#include <cmath>
#include <limits>

#include <Eigen/Jacobi>

#include "rineq/error.hpp"
#include "rineq/linalg.hpp"

namespace rineq {
namespace {

using Rotation = Eigen::JacobiRotation<Complex>;
using Index = Eigen::Index;

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// In-place Householder reduction: on return h is upper Hessenberg and
// h_in = q * h * q^*.
void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const Index n = h.rows();
  q.setIdentity(n, n);
  for (Index k = 0; k + 2 < n; ++k) {
    const Index len = n - k - 1;
    ComplexVector x = h.block(k + 1, k, len, 1);
    const double tail = x.tail(len - 1).norm();
    if (tail == 0.0) continue;
    const double xnorm = x.norm();
    const Complex phase = (std::abs(x(0)) == 0.0) ? Complex(1.0) : x(0) / std::abs(x(0));
    const Complex alpha = -phase * xnorm;
    ComplexVector v = x;
    v(0) -= alpha;
    v.normalize();
    // h <- P h P with P = I - 2 v v^*
    auto rows = h.middleRows(k + 1, len);
    rows -= 2.0 * v * (v.adjoint() * rows);
    auto cols = h.middleCols(k + 1, len);
    cols -= 2.0 * (cols * v) * v.adjoint();
    auto qcols = q.middleCols(k + 1, len);
    qcols -= 2.0 * (qcols * v) * v.adjoint();
    h.block(k + 2, k, len - 1, 1).setZero();
    h(k + 1, k) = alpha;
  }
}

bool negligible_subdiagonal(ComplexMatrix& t, Index i) {
  const double diag = abs1(t(i, i)) + abs1(t(i + 1, i + 1));
  const double sub = abs1(t(i + 1, i));
  if (sub <= kEps * diag || sub == 0.0) {
    t(i + 1, i) = 0.0;
    return true;
  }
  return false;
}

// Eigenvalue of the trailing 2x2 block of the active window closest to its
// last diagonal entry; every tenth iteration an ad hoc shift breaks cycles.
Complex wilkinson_shift(const ComplexMatrix& t, Index iu, int iter) {
  if ((iter == 10 || iter == 20) && iu >= 2) {
    return std::abs(t(iu, iu - 1).real()) + std::abs(t(iu - 1, iu - 2).real());
  }
  Eigen::Matrix2cd b = t.block<2, 2>(iu - 1, iu - 1);
  const double scale = b.cwiseAbs().sum();
  if (scale == 0.0) return 0.0;
  b /= scale;
  const Complex prod = b(0, 1) * b(1, 0);
  const Complex diff = b(0, 0) - b(1, 1);
  const Complex disc = std::sqrt(diff * diff + 4.0 * prod);
  const Complex det = b(0, 0) * b(1, 1) - prod;
  const Complex trace = b(0, 0) + b(1, 1);
  Complex e1 = (trace + disc) / 2.0;
  Complex e2 = (trace - disc) / 2.0;
  if (abs1(e1) > abs1(e2)) {
    e2 = det / e1;
  } else if (abs1(e2) != 0.0) {
    e1 = det / e2;
  }
  return scale * (abs1(e1 - b(1, 1)) < abs1(e2 - b(1, 1)) ? e1 : e2);
}

void apply_rotation(ComplexMatrix& t, ComplexMatrix& q, Index i, Index iu,
                    const Rotation& rot) {
  const Index n = t.cols();
  t.rightCols(n - i).applyOnTheLeft(i, i + 1, rot.adjoint());
  t.topRows(std::min(i + 2, iu) + 1).applyOnTheRight(i, i + 1, rot);
  q.applyOnTheRight(i, i + 1, rot);
}

}  // namespace

SchurForm eigen_general(const ComplexMatrix& m, double tol) {
  require_square(m, "eigen_general");
  require_finite(m, "eigen_general");
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive", "eigen_general");

  const Index n = m.rows();
  SchurForm form;
  form.triangular = m;
  reduce_to_hessenberg(form.triangular, form.unitary);
  ComplexMatrix& t = form.triangular;
  ComplexMatrix& q = form.unitary;

  const long budget = 50L * std::max<Index>(n, 1);
  long total = 0;
  int iter = 0;
  Index iu = n - 1;
  while (iu > 0) {
    if (negligible_subdiagonal(t, iu - 1)) {
      --iu;
      iter = 0;
      continue;
    }
    if (++total > budget) {
      throw Error(ErrorCode::kNonConvergence,
                  "QR iteration exceeded its budget of " + std::to_string(budget) + " sweeps",
                  "eigen_general");
    }
    ++iter;
    Index il = iu - 1;
    while (il > 0 && !negligible_subdiagonal(t, il - 1)) --il;

    const Complex shift = wilkinson_shift(t, iu, iter);
    Rotation rot;
    rot.makeGivens(t(il, il) - shift, t(il + 1, il));
    apply_rotation(t, q, il, iu, rot);
    for (Index i = il + 1; i < iu; ++i) {
      rot.makeGivens(t(i, i - 1), t(i + 1, i - 1), &t(i, i - 1));
      t(i + 1, i - 1) = 0.0;
      apply_rotation(t, q, i, iu, rot);
    }
  }
  t.triangularView<Eigen::StrictlyLower>().setZero();

  const double norm = m.norm();
  const double recon = (q * t * q.adjoint() - m).norm();
  if (recon > 100.0 * tol * std::max(norm, std::numeric_limits<double>::min())) {
    throw Error(ErrorCode::kNonConvergence,
                "Schur reconstruction error " + std::to_string(recon) + " exceeds tolerance",
                "eigen_general");
  }
  form.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) form.eigenvalues[static_cast<std::size_t>(i)] = t(i, i);
  return form;
}

Eigen::Index reorder_schur(SchurForm& form, std::vector<bool> select) {
  ComplexMatrix& t = form.triangular;
  ComplexMatrix& q = form.unitary;
  const Index n = t.rows();
  if (static_cast<Index>(select.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "selection size differs from matrix order",
                "reorder_schur");
  }
  Index placed = 0;
  for (Index i = 0; i < n; ++i) {
    if (!select[static_cast<std::size_t>(i)]) continue;
    for (Index k = i - 1; k >= placed; --k) {
      const Complex a = t(k, k);
      const Complex b = t(k + 1, k + 1);
      Rotation rot;
      rot.makeGivens(t(k, k + 1), b - a);
      t.rightCols(n - k).applyOnTheLeft(k, k + 1, rot.adjoint());
      t.topRows(k + 2).applyOnTheRight(k, k + 1, rot);
      q.applyOnTheRight(k, k + 1, rot);
      t(k + 1, k) = 0.0;
      t(k, k) = b;
      t(k + 1, k + 1) = a;
      std::swap(select[static_cast<std::size_t>(k)], select[static_cast<std::size_t>(k + 1)]);
    }
    ++placed;
  }
  for (Index i = 0; i < n; ++i) form.eigenvalues[static_cast<std::size_t>(i)] = t(i, i);
  return placed;
}

}  // namespace rineq
