#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rineq/hamiltonian.hpp"
#include "rineq/krein.hpp"

namespace rineq {

/// R + V (J V)*, which equals R - V V* J and is again Hamiltonian.
HamiltonianPair rank_one_update(const HamiltonianPair& hp, const ComplexMatrix& V);

/// M = sum_j V_j V_j*. Generators built by construct_probe remember the
/// block they move; generators of a user-supplied M carry block -1.
struct ProbeMatrix {
  ComplexMatrix M;
  std::vector<ComplexVector> generators;
  std::vector<int> targeted_blocks;  // per generator: index into the classification, or -1
  std::vector<double> target_omegas;  // per generator: frequency of the targeted block
  double delta = 0.0;
  double cross_term_max = 0.0;  // largest |S_k* J V_j| over non-targeted blocks k

  friend bool operator==(const ProbeMatrix&, const ProbeMatrix&) = default;
};

/// For each targeted block j the generator is a multiple of the last chain
/// column of S_j with S_j* J V_j = (delta, 0, ..., 0)*. All blocks are targeted
/// when `targets` is empty. Throws kMissingChainBasis.
ProbeMatrix construct_probe(const HamiltonianPair& hp, const AxisClassification& c, double delta,
                            const std::vector<int>& targets = {});

/// Factors a Hermitian positive semidefinite M into untagged generators.
/// Throws kNotPositiveDefinite when M has a negative eigenvalue.
ProbeMatrix probe_from_matrix(const ComplexMatrix& M, double tol = kDefaultTol);

enum class TraceEventKind { kLeftAxis, kMetOppositeType, kFrozen };

struct TraceEvent {
  double t = 0.0;
  TraceEventKind kind = TraceEventKind::kLeftAxis;
  std::vector<double> frequencies;
  std::vector<int> trajectories;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct TraceOptions {
  double axis_tol = kDefaultAxisTol;
  int max_halvings = 8;
  double tol = kDefaultTol;
};

/// Eigenvalue paths of R - t M J. Row k of `positions` is the spectrum at
/// t_grid[k], reordered so that column i follows one trajectory. Types are +1
/// (first), -1 (second) or 0 (off the axis or not simple).
struct TraceResult {
  std::vector<double> t_grid;
  std::vector<std::vector<Complex>> positions;
  std::vector<std::vector<bool>> on_axis;
  std::vector<std::vector<int>> types;
  std::vector<TraceEvent> events;
  ComplexMatrix perturbation;  // accumulated t M over the frozen segments
  bool truncated = false;
  std::string diagnostic;
};

/// The spectrum is recomputed on `steps` equispaced values of t in
/// [0, t_max]; a step whose motion exceeds three times the first-order bound
/// t |M J| is halved up to max_halvings times. When an eigenvalue of the first
/// type meets one of the second type from below, the generators are rebuilt
/// at the meeting point without the met blocks so those eigenvalues stay put.
TraceResult trace_eigenvalues(const HamiltonianPair& hp, const ProbeMatrix& probe, double t_max,
                              int steps, const TraceOptions& options = {});

/// Columns t, eig_index, re, im, on_axis.
void write_trace_csv(const TraceResult& trace, std::ostream& out);

}  // namespace rineq
