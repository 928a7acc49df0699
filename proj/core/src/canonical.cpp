#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "rineq/error.hpp"
#include "rineq/krein.hpp"

namespace rineq {

CanonicalHamiltonian make_canonical_hamiltonian(std::span<const CanonicalBlock> blocks,
                                                std::span<const Complex> off_axis) {
  using Index = Eigen::Index;
  Index dim = 2 * static_cast<Index>(off_axis.size());
  for (const CanonicalBlock& b : blocks) {
    if (b.size < 1 || (b.beta != 1 && b.beta != -1)) {
      throw Error(ErrorCode::kInvalidArgument, "block needs size >= 1 and beta = +-1",
                  "make_canonical_hamiltonian");
    }
    dim += b.size;
  }
  if (dim == 0 || dim % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "total dimension must be even and positive",
                "make_canonical_hamiltonian");
  }

  ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix f = ComplexMatrix::Zero(dim, dim);
  std::vector<Index> offsets;
  Index at = 0;
  for (const CanonicalBlock& b : blocks) {
    offsets.push_back(at);
    for (int i = 0; i < b.size; ++i) {
      k(at + i, at + i) = Complex(0.0, b.omega);
      if (i + 1 < b.size) k(at + i, at + i + 1) = 1.0;
    }
    f.block(at, at, b.size, b.size) = epsilon_of(b.size, b.beta) * chain_pattern(b.size);
    at += b.size;
  }
  for (const Complex& lambda : off_axis) {
    if (lambda.real() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "off-axis eigenvalue has zero real part",
                  "make_canonical_hamiltonian");
    }
    k(at, at) = lambda;
    k(at + 1, at + 1) = -std::conj(lambda);
    f(at, at + 1) = 1.0;
    f(at + 1, at) = -1.0;
    at += 2;
  }

  // S = U |mu|^(1/2) V* maps the form i F onto i J when both eigenbases are
  // ordered by eigenvalue; this needs matching inertia.
  const Index n = dim / 2;
  const ComplexMatrix j = symplectic_unit(n);
  const HermitianEigen form = eigen_hermitian(Complex(0.0, 1.0) * f, 1e-12);
  const HermitianEigen unit = eigen_hermitian(Complex(0.0, 1.0) * j, 1e-12);
  for (Index i = 0; i < dim; ++i) {
    if ((form.eigenvalues(i) > 0.0) != (unit.eigenvalues(i) > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "blocks do not balance: the form needs " + std::to_string(n) +
                      " positive and negative directions",
                  "make_canonical_hamiltonian");
    }
  }
  const RealVector root = form.eigenvalues.cwiseAbs().cwiseSqrt();
  const ComplexMatrix s =
      unit.eigenvectors * root.cast<Complex>().asDiagonal() * form.eigenvectors.adjoint();
  const ComplexMatrix r = s * k * s.partialPivLu().inverse();

  CanonicalHamiltonian out{HamiltonianPair::from_matrix(r, 1e-9), {}};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    JordanBlockInfo info;
    info.omega = blocks[b].omega;
    info.size = blocks[b].size;
    info.beta = blocks[b].beta;
    info.kind = kind_of(info.size, info.beta);
    info.epsilon = epsilon_of(info.size, info.beta);
    info.chain_basis = s.middleCols(offsets[b], info.size);
    out.classification.total_axis_multiplicity += info.size;
    out.classification.blocks.push_back(std::move(info));
  }
  std::stable_sort(out.classification.blocks.begin(), out.classification.blocks.end(),
                   [](const JordanBlockInfo& a, const JordanBlockInfo& b) {
                     if (a.omega != b.omega) return a.omega < b.omega;
                     return a.size > b.size;
                   });
  return out;
}

}  // namespace rineq
