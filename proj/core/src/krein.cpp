#include "rineq/krein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rineq/error.hpp"

namespace rineq {
namespace {

using Index = Eigen::Index;

// Orthonormal basis Y of the generalized eigenspace of one axis group and the
// nilpotent part N of Y* R Y - i omega I. The diagonal of the restricted Schur
// block is the eigenvalue cloud of the group; replacing it by i omega is the
// backward perturbation that the clustering already asserted.
struct RestrictedGroup {
  ComplexMatrix basis;
  ComplexMatrix nilpotent;
};

RestrictedGroup restrict_to_group(const HamiltonianPair& hp, const AxisGroup& group, double tol) {
  SchurForm form = eigen_general(hp.R, tol);
  std::vector<bool> select(form.eigenvalues.size(), false);
  for (int i : group.members) {
    if (i < 0 || static_cast<std::size_t>(i) >= select.size()) {
      throw Error(ErrorCode::kInvalidArgument, "axis group member out of range",
                  "restrict_to_group");
    }
    select[static_cast<std::size_t>(i)] = true;
  }
  const Index k = reorder_schur(form, std::move(select));
  RestrictedGroup out;
  out.basis = form.unitary.leftCols(k);
  out.nilpotent = form.triangular.topLeftCorner(k, k);
  out.nilpotent.triangularView<Eigen::Lower>().setZero();
  return out;
}

Error failure(ErrorCode code, const std::string& what, double omega) {
  return Error(code, what + " at omega = " + std::to_string(omega), "classify_blocks");
}

struct Chain {
  ComplexMatrix coords;  // w x size, in the current complement coordinates
  Complex epsilon;
};

// Chain of length `size` for the largest remaining block. `nw` and `jw` are
// the nilpotent operator and J compressed to the current complement.
Chain extract_chain(const ComplexMatrix& nw, const ComplexMatrix& jw, int size,
                    const KreinOptions& options, double omega) {
  const Index w = nw.rows();
  std::vector<ComplexMatrix> powers(static_cast<std::size_t>(size));
  powers[0] = ComplexMatrix::Identity(w, w);
  for (int p = 1; p < size; ++p) powers[static_cast<std::size_t>(p)] = powers[static_cast<std::size_t>(p - 1)] * nw;
  const ComplexMatrix& top = powers[static_cast<std::size_t>(size - 1)];

  // F = c J N^(size-1) is Hermitian for c = 1 (even size) or c = i (odd).
  const Complex c = size % 2 == 1 ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  const ComplexMatrix form = hermitian_part(c * jw * top);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(form);
  const RealVector& mu = solver.eigenvalues();
  Index pick = 0;
  for (Index i = 1; i < mu.size(); ++i) {
    if (std::abs(mu(i)) > std::abs(mu(pick))) pick = i;
  }
  const double scale = std::max(top.norm(), 1e-300);
  if (!(std::abs(mu(pick)) > options.degenerate_tol * scale)) {
    throw failure(ErrorCode::kIndefiniteDegenerate,
                  "the J-form vanishes on the top of the Jordan chain", omega);
  }
  const ComplexVector x = solver.eigenvectors().col(pick);

  // g_p = x* J N^p x; the top vector is replaced by phi(N) x so that g_p = 0
  // for p < size - 1, with conj(phi)(-z) phi(z) = theta(z).
  std::vector<Complex> g(static_cast<std::size_t>(size));
  for (int p = 0; p < size; ++p) {
    g[static_cast<std::size_t>(p)] = x.dot(jw * (powers[static_cast<std::size_t>(p)] * x));
  }
  const Complex lead = g[static_cast<std::size_t>(size - 1)];
  std::vector<Complex> theta(static_cast<std::size_t>(size), Complex(0.0));
  theta[0] = 1.0;
  for (int p = size - 2; p >= 0; --p) {
    Complex acc = g[static_cast<std::size_t>(p)];
    for (int s = 1; s <= size - 2 - p; ++s) {
      acc += theta[static_cast<std::size_t>(s)] * g[static_cast<std::size_t>(s + p)];
    }
    theta[static_cast<std::size_t>(size - 1 - p)] = -acc / lead;
  }
  std::vector<Complex> a(static_cast<std::size_t>(size), Complex(0.0));
  a[0] = 1.0;
  for (int k = 1; k < size; ++k) {
    Complex cross = 0.0;
    for (int i = 1; i < k; ++i) {
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      cross += std::conj(a[static_cast<std::size_t>(i)]) * sign * a[static_cast<std::size_t>(k - i)];
    }
    const Complex rho = theta[static_cast<std::size_t>(k)] - cross;
    a[static_cast<std::size_t>(k)] =
        k % 2 == 0 ? Complex(rho.real() / 2.0, 0.0) : Complex(0.0, rho.imag() / 2.0);
  }
  ComplexVector top_vec = ComplexVector::Zero(w);
  for (int k = 0; k < size; ++k) top_vec += a[static_cast<std::size_t>(k)] * (powers[static_cast<std::size_t>(k)] * x);
  top_vec /= std::sqrt(std::abs(lead));

  Chain chain;
  chain.coords.resize(w, size);
  for (int j = 0; j < size; ++j) {
    chain.coords.col(j) = powers[static_cast<std::size_t>(size - 1 - j)] * top_vec;
  }
  const Complex g_top = top_vec.dot(jw * (top * top_vec));
  chain.epsilon = (size % 2 == 0 ? 1.0 : -1.0) * g_top / std::abs(g_top);
  return chain;
}

int beta_from_epsilon(Complex epsilon, int size, double omega) {
  // Even: epsilon = (-1)^(size/2) beta. Odd: epsilon = (-1)^((size-1)/2) i beta.
  Complex raw;
  if (size % 2 == 0) {
    raw = epsilon * ((size / 2) % 2 == 0 ? 1.0 : -1.0);
  } else {
    raw = epsilon / (Complex(0.0, 1.0) * (((size - 1) / 2) % 2 == 0 ? 1.0 : -1.0));
  }
  if (std::abs(raw.imag()) > 1e-6) {
    throw failure(ErrorCode::kChainExtractionFailure,
                  "normalized chain has a non-real index", omega);
  }
  return raw.real() > 0.0 ? 1 : -1;
}

void check_chain(const HamiltonianPair& hp, const JordanBlockInfo& b, const KreinOptions& options) {
  const ComplexMatrix& s = b.chain_basis;
  ComplexMatrix k = Complex(0.0, b.omega) * ComplexMatrix::Identity(b.size, b.size);
  for (int i = 0; i + 1 < b.size; ++i) k(i, i + 1) = 1.0;
  const double s_norm = s.norm();
  const double residual = (hp.R * s - s * k).norm();
  if (residual > options.chain_tol * std::max(hp.R.norm(), 1.0) * s_norm) {
    throw failure(ErrorCode::kChainExtractionFailure,
                  "chain residual " + std::to_string(residual) + " exceeds tolerance", b.omega);
  }
  const double pattern = (s.adjoint() * hp.J * s - b.epsilon * chain_pattern(b.size)).norm();
  if (pattern > options.chain_tol * std::max(s_norm * s_norm, 1.0)) {
    throw failure(ErrorCode::kChainExtractionFailure,
                  "chain misses the J normal form by " + std::to_string(pattern), b.omega);
  }
}

std::vector<JordanBlockInfo> classify_group(const HamiltonianPair& hp, const GroupStructure& gs,
                                            const KreinOptions& options) {
  const RestrictedGroup rg = restrict_to_group(hp, gs.group, options.tol);
  const ComplexMatrix je = rg.basis.adjoint() * hp.J * rg.basis;
  const Index k = rg.nilpotent.rows();

  std::vector<int> sizes = gs.sizes;
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  int total = 0;
  for (int s : sizes) total += s;
  if (total != k) {
    throw failure(ErrorCode::kChainExtractionFailure,
                  "block sizes do not add up to the group multiplicity", gs.group.omega);
  }

  std::vector<JordanBlockInfo> blocks;
  ComplexMatrix w = ComplexMatrix::Identity(k, k);
  for (int size : sizes) {
    const ComplexMatrix nw = w.adjoint() * rg.nilpotent * w;
    const ComplexMatrix jw = w.adjoint() * je * w;
    const Chain chain = extract_chain(nw, jw, size, options, gs.group.omega);

    JordanBlockInfo b;
    b.omega = gs.group.omega;
    b.size = size;
    b.epsilon = chain.epsilon;
    b.beta = beta_from_epsilon(chain.epsilon, size, b.omega);
    b.kind = kind_of(size, b.beta);
    b.chain_basis = rg.basis * (w * chain.coords);
    check_chain(hp, b, options);
    blocks.push_back(std::move(b));

    if (w.cols() > size) {
      const ComplexMatrix constraint = chain.coords.adjoint() * jw;
      Eigen::JacobiSVD<ComplexMatrix> svd(constraint, Eigen::ComputeFullV);
      w = w * svd.matrixV().rightCols(w.cols() - size);
    }
  }
  return blocks;
}

bool makes_indeterminate(ErrorCode c) {
  switch (c) {
    case ErrorCode::kRankAmbiguity:
    case ErrorCode::kChainExtractionFailure:
    case ErrorCode::kIndefiniteDegenerate:
    case ErrorCode::kPairingFailure:
    case ErrorCode::kNonConvergence:
      return true;
    default:
      return false;
  }
}

}  // namespace

BlockKind kind_of(int size, int beta) {
  if (size % 2 == 0) return BlockKind::kNeutral;
  return beta > 0 ? BlockKind::kFirstType : BlockKind::kSecondType;
}

Complex epsilon_of(int size, int beta) {
  if (size % 2 == 0) return static_cast<double>(beta) * ((size / 2) % 2 == 0 ? 1.0 : -1.0);
  return Complex(0.0, static_cast<double>(beta) * (((size - 1) / 2) % 2 == 0 ? 1.0 : -1.0));
}

ComplexMatrix chain_pattern(int size) {
  ComplexMatrix p = ComplexMatrix::Zero(size, size);
  for (int k = 0; k < size; ++k) p(k, size - 1 - k) = k % 2 == 0 ? -1.0 : 1.0;
  return p;
}

std::vector<int> jordan_structure(const HamiltonianPair& hp, const AxisGroup& group,
                                  const KreinOptions& options) {
  const RestrictedGroup rg = restrict_to_group(hp, group, options.tol);
  const Index mult = rg.nilpotent.rows();
  const double norm = std::max(hp.R.norm(), 1e-300);

  std::vector<Index> nullity{0};
  ComplexMatrix p = ComplexMatrix::Identity(mult, mult);
  for (Index k = 1; k <= mult && nullity.back() < mult; ++k) {
    p = p * rg.nilpotent;
    const double tau = options.rank_tol * std::pow(norm, static_cast<double>(k));
    const RealVector s = singular_values(p);
    Index d = 0;
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) >= 0.1 * tau && s(i) <= 10.0 * tau) {
        throw Error(ErrorCode::kRankAmbiguity,
                    "singular value " + std::to_string(s(i)) + " of (R - i omega I)^" +
                        std::to_string(k) + " lies in the ambiguous band around " +
                        std::to_string(tau) + " at omega = " + std::to_string(group.omega),
                    "jordan_structure");
      }
      if (s(i) < 0.1 * tau) ++d;
    }
    if (d <= nullity.back()) {
      throw Error(ErrorCode::kRankAmbiguity,
                  "nullity staircase stalled at omega = " + std::to_string(group.omega),
                  "jordan_structure");
    }
    nullity.push_back(d);
  }

  std::vector<int> sizes;
  const auto levels = static_cast<Index>(nullity.size()) - 1;
  for (Index k = levels; k >= 1; --k) {
    const Index at_least_k = nullity[static_cast<std::size_t>(k)] - nullity[static_cast<std::size_t>(k - 1)];
    const Index at_least_next =
        k == levels ? 0
                    : nullity[static_cast<std::size_t>(k + 1)] - nullity[static_cast<std::size_t>(k)];
    for (Index c = 0; c < at_least_k - at_least_next; ++c) sizes.push_back(static_cast<int>(k));
  }
  return sizes;
}

AxisClassification classify_blocks(const HamiltonianPair& hp,
                                   std::span<const GroupStructure> structure,
                                   const KreinOptions& options) {
  AxisClassification c;
  for (const GroupStructure& gs : structure) {
    for (JordanBlockInfo& b : classify_group(hp, gs, options)) {
      c.total_axis_multiplicity += b.size;
      c.blocks.push_back(std::move(b));
    }
  }
  std::stable_sort(c.blocks.begin(), c.blocks.end(),
                   [](const JordanBlockInfo& a, const JordanBlockInfo& b) {
                     if (a.omega != b.omega) return a.omega < b.omega;
                     return a.size > b.size;
                   });
  return c;
}

AxisClassification classify(const HamiltonianPair& hp, const KreinOptions& options) {
  const SpectrumReport sr = spectrum(hp, options.axis_tol, options.tol);
  std::vector<GroupStructure> structure;
  for (const AxisGroup& g : sr.axis_groups) {
    structure.push_back({g, jordan_structure(hp, g, options)});
  }
  return classify_blocks(hp, structure, options);
}

int s_function(const AxisClassification& c, double omega) {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  for (const JordanBlockInfo& b : c.blocks) {
    if (b.size % 2 == 1) {
      if (b.beta > 0 && b.omega < omega) ++plus;
      if (b.beta < 0 && b.omega <= omega) ++minus;
    } else if (b.beta < 0 && b.omega == omega) {
      ++zero;
    }
  }
  return plus - minus - zero;
}

SolvabilityVerdict verdict(const HamiltonianPair& hp, const KreinOptions& options) {
  SolvabilityVerdict v;
  try {
    v.classification = classify(hp, options);
  } catch (const Error& e) {
    if (!makes_indeterminate(e.code())) throw;
    v.status = VerdictStatus::kIndeterminate;
    v.solvable = false;
    v.diagnostic = std::string(to_string(e.code())) + ": " + e.what();
    return v;
  }
  for (const JordanBlockInfo& b : v.classification.blocks) {
    switch (b.kind) {
      case BlockKind::kFirstType: ++v.first_type_count; break;
      case BlockKind::kSecondType: ++v.second_type_count; break;
      case BlockKind::kNeutral: ++v.neutral_count; break;
    }
    if (!v.s_values.empty() && v.s_values.back().omega == b.omega) continue;
    v.s_values.push_back({b.omega, 0});
  }
  for (FrequencyValue& f : v.s_values) {
    f.s = s_function(v.classification, f.omega);
    if (f.s < 0 && !v.witness) v.witness = f.omega;
  }
  v.solvable = !v.witness.has_value();
  v.status = v.solvable ? VerdictStatus::kSolvable : VerdictStatus::kNotSolvable;
  return v;
}

SolvabilityVerdict verdict(const RiccatiProblem& p, const KreinOptions& options) {
  return verdict(build_hamiltonian(p, options.tol), options);
}

}  // namespace rineq
