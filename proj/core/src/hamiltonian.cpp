#include "rineq/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rineq/error.hpp"

namespace rineq {

double hamiltonian_defect(const ComplexMatrix& R) {
  const ComplexMatrix jr = symplectic_unit(R.rows() / 2) * R;
  const double norm = R.norm();
  const double skew = (jr - jr.adjoint()).norm();
  return norm == 0.0 ? skew : skew / norm;
}

HamiltonianPair HamiltonianPair::from_matrix(ComplexMatrix R, double tol) {
  require_square(R, "HamiltonianPair");
  require_finite(R, "HamiltonianPair");
  if (R.rows() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "Hamiltonian matrix must have even order",
                "HamiltonianPair");
  }
  if (hamiltonian_defect(R) > tol) {
    throw Error(ErrorCode::kNotHermitian,
                "J*R is not Hermitian (relative defect " + std::to_string(hamiltonian_defect(R)) +
                    ")",
                "HamiltonianPair");
  }
  HamiltonianPair hp;
  hp.n = R.rows() / 2;
  hp.J = symplectic_unit(hp.n);
  hp.R = std::move(R);
  return hp;
}

HamiltonianPair build_hamiltonian(const RiccatiProblem& p, double tol) {
  validate(p, tol);
  const Eigen::Index n = p.n();
  HamiltonianPair hp;
  hp.n = n;
  hp.J = symplectic_unit(n);
  hp.R.resize(2 * n, 2 * n);
  hp.R << p.A, -gain_matrix(p), -p.G, -p.A.adjoint();
  hp.source = p;
  return hp;
}

SpectrumReport spectrum(const HamiltonianPair& hp, double axis_tol, double tol) {
  if (!(axis_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "axis_tol must be positive", "spectrum");
  }
  SpectrumReport report;
  report.axis_tol = axis_tol;
  report.norm = hp.R.norm();
  report.eigenvalues = eigenvalues_of(hp.R, tol);
  const auto& ev = report.eigenvalues;
  const int count = static_cast<int>(ev.size());

  const double band = axis_tol * report.norm;
  const double cluster_radius = 10.0 * band;
  const double pair_radius = 100.0 * band;

  std::vector<int> axis;
  std::vector<int> off;
  for (int i = 0; i < count; ++i) {
    (std::abs(ev[static_cast<std::size_t>(i)].real()) <= band ? axis : off).push_back(i);
  }
  const auto im = [&](int i) { return ev[static_cast<std::size_t>(i)].imag(); };
  std::stable_sort(axis.begin(), axis.end(), [&](int a, int b) { return im(a) < im(b); });

  for (std::size_t k = 0; k < axis.size(); ++k) {
    if (k == 0 || im(axis[k]) - im(axis[k - 1]) > cluster_radius) {
      report.axis_groups.emplace_back();
    }
    report.axis_groups.back().members.push_back(axis[k]);
  }
  for (AxisGroup& g : report.axis_groups) {
    g.multiplicity = static_cast<int>(g.members.size());
    double sum = 0.0;
    for (int i : g.members) sum += im(i);
    g.omega = sum / g.multiplicity;
  }

  std::stable_sort(off.begin(), off.end(), [&](int a, int b) {
    const double ra = std::abs(ev[static_cast<std::size_t>(a)].real());
    const double rb = std::abs(ev[static_cast<std::size_t>(b)].real());
    if (ra != rb) return ra > rb;
    return im(a) < im(b);
  });
  std::vector<bool> used(static_cast<std::size_t>(count), false);
  for (int i : off) {
    if (used[static_cast<std::size_t>(i)]) continue;
    const Complex mirror = -std::conj(ev[static_cast<std::size_t>(i)]);
    int best = -1;
    double best_dist = 0.0;
    for (int j : off) {
      if (j == i || used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(ev[static_cast<std::size_t>(j)] - mirror);
      if (best < 0 || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best < 0 || best_dist > pair_radius) {
      throw Error(ErrorCode::kPairingFailure,
                  "no partner for eigenvalue " + std::to_string(ev[static_cast<std::size_t>(i)].real()) +
                      "+" + std::to_string(im(i)) + "i",
                  "spectrum");
    }
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(best)] = true;
    if (ev[static_cast<std::size_t>(i)].real() < 0.0) {
      report.pairing.emplace_back(i, best);
    } else {
      report.pairing.emplace_back(best, i);
    }
  }
  for (int i : axis) report.pairing.emplace_back(i, i);
  report.off_axis_count = static_cast<int>(off.size());
  return report;
}

}  // namespace rineq
