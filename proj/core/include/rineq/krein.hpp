#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rineq/hamiltonian.hpp"
#include "rineq/linalg.hpp"

namespace rineq {

/// Odd-size blocks carry one net eigenvalue of the first (beta = +1) or second
/// (beta = -1) type; even-size blocks are neutral.
enum class BlockKind { kNeutral, kFirstType, kSecondType };

BlockKind kind_of(int size, int beta);

/// A Jordan block of R at i*omega. When present, the chain basis S satisfies
/// R S = S (i omega I + N) with N the upper shift, and S* J S = epsilon P where
/// P is anti-diagonal with P(k, size-1-k) = (-1)^(k+1), k = 0..size-1.
/// epsilon = (-1)^(size/2) beta for even size, (-1)^((size-1)/2) i beta for odd.
struct JordanBlockInfo {
  double omega = 0.0;
  int size = 0;
  int beta = 0;
  BlockKind kind = BlockKind::kNeutral;
  Complex epsilon{0.0, 0.0};
  ComplexMatrix chain_basis;  // 2n x size, or empty

  bool has_chain_basis() const { return chain_basis.size() != 0; }
  friend bool operator==(const JordanBlockInfo&, const JordanBlockInfo&) = default;
};

/// epsilon for a block of the given size and index.
Complex epsilon_of(int size, int beta);

/// The anti-diagonal pattern P of the chain normal form.
ComplexMatrix chain_pattern(int size);

struct AxisClassification {
  std::vector<JordanBlockInfo> blocks;  // ascending omega, then descending size
  int total_axis_multiplicity = 0;

  friend bool operator==(const AxisClassification&, const AxisClassification&) = default;
};

struct KreinOptions {
  double axis_tol = kDefaultAxisTol;
  // Nullity threshold for (R - i omega I)^k is rank_tol * |R|^k; singular
  // values within a factor 10 of it are ambiguous.
  double rank_tol = 1e-6;
  // Relative residual allowed for an extracted chain. A block of size k is
  // computed with an error of order eps^(1/k).
  double chain_tol = 1e-4;
  // |x* F x| below this fraction of its scale means the form is degenerate.
  double degenerate_tol = 1e-8;
  double tol = kDefaultTol;
};

/// Block sizes (descending) at one axis group from the nullity staircase
/// d_k = dim ker (R - i omega I)^k. Throws kRankAmbiguity.
std::vector<int> jordan_structure(const HamiltonianPair& hp, const AxisGroup& group,
                                  const KreinOptions& options = {});

struct GroupStructure {
  AxisGroup group;
  std::vector<int> sizes;
};

/// Extracts a J-normalized chain for every block and reads beta from its
/// epsilon. Throws kChainExtractionFailure or kIndefiniteDegenerate.
AxisClassification classify_blocks(const HamiltonianPair& hp,
                                   std::span<const GroupStructure> structure,
                                   const KreinOptions& options = {});

/// spectrum -> jordan_structure -> classify_blocks
AxisClassification classify(const HamiltonianPair& hp, const KreinOptions& options = {});

/// m_+(omega) - m_-(omega) - m_0(omega): odd blocks with beta = +1 strictly
/// below omega, minus odd blocks with beta = -1 at or below omega, minus even
/// blocks with beta = -1 exactly at omega.
int s_function(const AxisClassification& c, double omega);

enum class VerdictStatus { kSolvable, kNotSolvable, kIndeterminate };

struct FrequencyValue {
  double omega = 0.0;
  int s = 0;

  friend bool operator==(const FrequencyValue&, const FrequencyValue&) = default;
};

struct SolvabilityVerdict {
  VerdictStatus status = VerdictStatus::kIndeterminate;
  bool solvable = false;
  std::vector<FrequencyValue> s_values;  // one per distinct axis frequency
  std::optional<double> witness;         // lowest frequency with s < 0
  AxisClassification classification;
  int first_type_count = 0;
  int second_type_count = 0;
  int neutral_count = 0;
  std::string diagnostic;  // why the verdict is indeterminate

  friend bool operator==(const SolvabilityVerdict&, const SolvabilityVerdict&) = default;
};

/// Solvable iff s >= 0 at every axis frequency; no axis eigenvalues means
/// solvable. Classification failures give kIndeterminate.
SolvabilityVerdict verdict(const HamiltonianPair& hp, const KreinOptions& options = {});
SolvabilityVerdict verdict(const RiccatiProblem& p, const KreinOptions& options = {});

/// Building blocks of a Hamiltonian with prescribed imaginary-axis structure.
struct CanonicalBlock {
  double omega = 0.0;
  int size = 1;
  int beta = 1;
};

struct CanonicalHamiltonian {
  HamiltonianPair pair;
  AxisClassification classification;  // with analytic chain bases
};

/// R = S K S^{-1} with S* J S = F, where K and F are block diagonal: a Jordan
/// block and epsilon P per axis block, and diag(lambda, -conj(lambda)) with
/// [[0, 1], [-1, 0]] per off-axis eigenvalue. Throws kInvalidArgument when the
/// inertia of i F is not (n, 0, n), i.e. no such S exists.
CanonicalHamiltonian make_canonical_hamiltonian(std::span<const CanonicalBlock> blocks,
                                                std::span<const Complex> off_axis = {});

}  // namespace rineq
