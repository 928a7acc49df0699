// One line per acceptance criterion: PASS/FAIL, index, name, wall time and a
// short measurement. The exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "fixtures.hpp"
#include "rineq/error.hpp"
#include "rineq/krein.hpp"
#include "rineq/migration.hpp"
#include "rineq/riccati.hpp"

namespace {

using namespace rineq;
namespace t = rineq::testing;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome spectrum_reproduction() {
  const std::vector<Complex> ev = eigenvalues_of(build_hamiltonian(t::indefinite_example()).R);
  const std::vector<Complex> expected = {{0, 6.0506}, {0, -6.0506}, {0, 1.5866},
                                         {0, -1.5866}, {1.7964, 0}, {-1.7964, 0}};
  std::vector<bool> used(ev.size(), false);
  double worst = 0.0;
  for (const Complex& e : expected) {
    double best = 1e300;
    std::size_t at = 0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (!used[i] && std::abs(ev[i] - e) < best) best = std::abs(ev[i] - e), at = i;
    }
    used[at] = true;
    worst = std::max(worst, best);
  }
  return {ev.size() == 6 && worst <= 1e-3, fmt("max deviation %.2e", worst)};
}

Outcome solution_reproduction() {
  RiccatiProblem p1 = t::indefinite_example();
  p1.G += t::example_zeta();
  const SolutionCertificate c = solve_are(p1, SolutionMode::kStabilizing);
  const ComplexMatrix h = t::example_solution();
  const double rel = (c.H - h).norm() / h.norm();
  const InequalityCheck check = verify_inequality(t::indefinite_example(), c.H);
  return {rel <= 5e-3 && check.margin < 0.0,
          fmt("relative distance %.2e, margin against G %.4f", rel, check.margin)};
}

Outcome scalar_oracle() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  int value_fail = 0, label_fail = 0, axis_fail = 0, solved = 0, axis = 0;
  double worst = 0.0;
  while (solved + axis < 1000) {
    const double a = coef(rng), b = coef(rng), g = coef(rng), gamma = coef(rng);
    const t::ScalarRoots oracle = t::scalar_are_roots(a, b, g, gamma);
    if (!(std::abs(oracle.discriminant) > 1e-3)) continue;
    const RiccatiProblem p = t::scalar(a, b, g, gamma);
    if (oracle.discriminant < 0.0) {
      // R has eigenvalues +-i sqrt(-d): no solution of the equation exists
      ++axis;
      try {
        solve_are(p, SolutionMode::kStabilizing);
        ++axis_fail;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAxisEigenvalue) ++axis_fail;
      }
      continue;
    }
    ++solved;
    for (SolutionMode mode : {SolutionMode::kStabilizing, SolutionMode::kAntiStabilizing}) {
      const double want =
          mode == SolutionMode::kStabilizing ? oracle.stabilizing : oracle.anti_stabilizing;
      try {
        const SolutionCertificate c = solve_are(p, mode);
        const double err = std::abs(c.H(0, 0).real() - want) / std::max(1.0, std::abs(want));
        worst = std::max(worst, err);
        if (err > 1e-10) ++value_fail;
        const double cl = c.closed_loop_eigenvalues[0].real();
        const double oracle_cl = a - (b * b / gamma) * want;
        if ((cl < 0) != (oracle_cl < 0) || (cl < 0) != (mode == SolutionMode::kStabilizing)) {
          ++label_fail;
        }
      } catch (const Error&) {
        ++value_fail;
      }
    }
  }
  return {value_fail == 0 && label_fail == 0 && axis_fail == 0,
          fmt("%d solved, %d axis cases, worst relative error %.2e, failures %d/%d/%d", solved,
              axis, worst, value_fail, label_fail, axis_fail)};
}

Outcome constructed_soundness() {
  std::mt19937_64 rng(77);
  int indeterminate = 0, unsound = 0, certified = 0;
  for (int i = 0; i < 200; ++i) {
    const RiccatiProblem p = t::constructed_solvable(2 + i % 2, 1 + (i / 2) % 2, rng);
    const SolvabilityVerdict v = verdict(p);
    if (v.status == VerdictStatus::kIndeterminate) {
      ++indeterminate;
      continue;
    }
    if (!v.solvable) {
      ++unsound;
      continue;
    }
    try {
      const SolutionCertificate c = solve_inequality(p, SolutionMode::kStabilizing);
      if (verify_inequality(p, c.H).satisfied && c.inequality_margin < 0.0) {
        ++certified;
      } else {
        ++unsound;
      }
    } catch (const Error&) {
      ++unsound;
    }
  }
  const double rate = indeterminate / 200.0;
  return {unsound == 0 && rate < 0.05,
          fmt("%d certified, %d failed, indeterminate rate %.1f%%", certified, unsound,
              100 * rate)};
}

Outcome completeness_witness() {
  std::string detail;
  bool ok = true;
  for (double c : {0.1, 1.0, 10.0}) {
    const SolvabilityVerdict v = verdict(t::scalar(0, 1, c, -1));
    ok = ok && v.status == VerdictStatus::kNotSolvable && !v.solvable && v.witness.has_value();
    detail += fmt("c=%g witness %s ", c, v.witness ? fmt("%.4f", *v.witness).c_str() : "none");
  }
  return {ok, detail};
}

Outcome krein_ground_truth() {
  const AxisClassification pos = classify(HamiltonianPair::from_matrix(symplectic_unit(1)));
  const AxisClassification neg = classify(HamiltonianPair::from_matrix(-symplectic_unit(1)));
  auto layout_ok = [](const AxisClassification& c, BlockKind below, BlockKind above) {
    return c.blocks.size() == 2 && std::abs(c.blocks[0].omega + 1) < 1e-12 &&
           std::abs(c.blocks[1].omega - 1) < 1e-12 && c.blocks[0].size == 1 &&
           c.blocks[1].size == 1 && c.blocks[0].kind == below && c.blocks[1].kind == above;
  };
  const bool layout = layout_ok(pos, BlockKind::kFirstType, BlockKind::kSecondType) &&
                      layout_ok(neg, BlockKind::kSecondType, BlockKind::kFirstType);
  const SolvabilityVerdict vp = verdict(HamiltonianPair::from_matrix(symplectic_unit(1)));
  const SolvabilityVerdict vn = verdict(HamiltonianPair::from_matrix(-symplectic_unit(1)));
  const bool sp = vp.s_values.size() == 2 && vp.s_values[0].s == 0 && vp.s_values[1].s == 0;
  const bool sn = vn.s_values.size() == 2 && vn.s_values[0].s == -1 && vn.s_values[1].s == -1 &&
                  vn.witness && std::abs(*vn.witness + 1) < 1e-12;
  return {layout && sp && sn && vp.solvable && !vn.solvable,
          fmt("R=J s=(%d,%d), R=-J s=(%d,%d)", vp.s_values.at(0).s, vp.s_values.at(1).s,
              vn.s_values.at(0).s, vn.s_values.at(1).s)};
}

Outcome theorem_one() {
  bool ok = true;
  std::string detail;
  for (int size : {1, 2, 3}) {
    for (int beta : {1, -1}) {
      const t::BlockMotion m = t::canonical_block_motion(size, beta);
      const int r = size / 2;
      bool case_ok = !m.truncated && m.stayed_other == 0 && m.left_axis_events == m.departed;
      if (size % 2 == 1) {
        // one eigenvalue stays and moves along beta with the matching type
        case_ok = case_ok && m.departed == 2 * r &&
                  (beta > 0 ? m.stayed_up_first == 1 && m.stayed_down_second == 0
                            : m.stayed_down_second == 1 && m.stayed_up_first == 0);
      } else if (beta > 0) {
        case_ok = case_ok && m.departed == size && m.stayed_up_first + m.stayed_down_second == 0;
      } else {
        case_ok = case_ok && m.departed == size - 2 && m.stayed_up_first == 1 &&
                  m.stayed_down_second == 1;
      }
      ok = ok && case_ok;
      detail += fmt("[%d,%+d: left %d up %d down %d] ", size, beta, m.departed,
                    m.stayed_up_first, m.stayed_down_second);
    }
  }
  return {ok, detail};
}

Outcome property_suites() {
  std::mt19937_64 rng(99);
  double pairing = 0.0, isotropy = 0.0, defect = 0.0, det_gap = 0.0;
  int pairing_fail = 0, isotropy_samples = 0;
  for (int i = 0; i < 500; ++i) {
    const RiccatiProblem p = t::random_problem(1 + i % 6, 1 + i % 3, rng);
    const HamiltonianPair hp = build_hamiltonian(p);
    defect = std::max(defect, hamiltonian_defect(hp.R));
    try {
      const SpectrumReport s = spectrum(hp);
      for (const auto& [a, b] : s.pairing) {
        const Complex la = s.eigenvalues[static_cast<std::size_t>(a)];
        const Complex lb = s.eigenvalues[static_cast<std::size_t>(b)];
        pairing = std::max(pairing, std::abs(la + std::conj(lb)) / s.norm);
      }
      if (s.axis_groups.empty()) {
        const ComplexMatrix z = stable_invariant_basis(hp.R, HalfPlane::kLeft);
        const double rel = (z.adjoint() * hp.J * z).norm() / (kDefaultTol * z.squaredNorm());
        isotropy = std::max(isotropy, rel);
        ++isotropy_samples;
      }
    } catch (const Error&) {
      ++pairing_fail;
    }
    const ComplexMatrix v = t::random_complex(2 * p.n(), 1, rng);
    const ComplexMatrix r = rank_one_update(hp, v).R;
    const Complex lambda = t::random_complex(1, 1, rng)(0, 0);
    const ComplexMatrix eye = ComplexMatrix::Identity(hp.R.rows(), hp.R.cols());
    const ComplexMatrix shifted = hp.R - lambda * eye;
    const Complex lhs = (r - lambda * eye).determinant();
    const Complex rhs =
        shifted.determinant() *
        (1.0 + ((hp.J * v).adjoint() * shifted.partialPivLu().solve(v))(0, 0));
    det_gap = std::max(det_gap, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
  }
  const bool ok = pairing_fail == 0 && pairing <= 1e-7 && isotropy <= 100.0 && defect <= 1e-12 &&
                  det_gap <= 1e-8 && isotropy_samples > 0;
  return {ok, fmt("pairing %.1e (%d failed), isotropy %.1e tol over %d, JR defect %.1e, "
                  "determinant %.1e",
                  pairing, pairing_fail, isotropy, isotropy_samples, defect, det_gap)};
}

Outcome ky_cross_check() {
  const RiccatiProblem p = t::indefinite_example();
  const double wmax = default_omega_max(p);
  const KYGridReport r = ky_grid_check(p, wmax);
  const double cell = 2 * wmax / (r.grid_points - 1);
  double worst = 0.0;
  for (double target : {-6.0506, -1.5866, 1.5866, 6.0506}) {
    double best = 1e300;
    for (const GridMinimum& m : r.local_minima) best = std::min(best, std::abs(m.omega - target));
    worst = std::max(worst, best);
  }
  return {worst <= cell, fmt("worst distance %.4f, cell %.4f", worst, cell)};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"example spectrum reproduction", 1, spectrum_reproduction},
      {"example solution reproduction", 1, solution_reproduction},
      {"scalar oracle suite", 10, scalar_oracle},
      {"verdict soundness on constructed instances", 60, constructed_soundness},
      {"verdict completeness witness", 1, completeness_witness},
      {"Krein classification ground truth", 1, krein_ground_truth},
      {"rank-one homotopy block behavior", 30, theorem_one},
      {"property suites", 60, property_suites},
      {"frequency-domain grid cross-check", 5, ky_cross_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%zu] %s (%.3f s, budget %.0f s): %s%s\n", pass ? "PASS" : "FAIL", i + 1,
                c.name, secs, c.budget_seconds, o.detail.c_str(),
                in_time ? "" : " [over budget]");
  }
  return failures;
}
