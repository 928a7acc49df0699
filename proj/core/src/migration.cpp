#include "rineq/migration.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <tuple>

#include <Eigen/SVD>

#include "rineq/error.hpp"

namespace rineq {
namespace {

using Index = Eigen::Index;
constexpr Complex kI{0.0, 1.0};

struct Generator {
  ComplexVector v;
  int block = -1;
  double omega = 0.0;
};

struct State {
  double t = 0.0;
  std::vector<Complex> pos;
  std::vector<bool> axis;
  std::vector<int> type;
};

// Greedy nearest-neighbour assignment: perm[i] is the index into `next` that
// continues trajectory i.
std::vector<std::size_t> match(const std::vector<Complex>& prev, const std::vector<Complex>& next) {
  const std::size_t n = prev.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(std::abs(prev[i] - next[j]), i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> perm(n, n);
  std::vector<bool> taken(n, false);
  for (const auto& [d, i, j] : pairs) {
    if (perm[i] != n || taken[j]) continue;
    perm[i] = j;
    taken[j] = true;
  }
  return perm;
}

double nearest_other(const std::vector<Complex>& pts, std::size_t i) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j != i) best = std::min(best, std::abs(pts[j] - pts[i]));
  }
  return best;
}

// Unit null vector of r - lambda I.
ComplexVector null_vector(const ComplexMatrix& r, Complex lambda) {
  const ComplexMatrix shifted = r - lambda * ComplexMatrix::Identity(r.rows(), r.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  return svd.matrixV().col(r.cols() - 1);
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

class Tracer {
 public:
  Tracer(const HamiltonianPair& hp, const ProbeMatrix& probe, const TraceOptions& options)
      : j_(hp.J), base_(hp.R), options_(options) {
    delta_ = probe.delta;
    for (std::size_t g = 0; g < probe.generators.size(); ++g) {
      Generator gen;
      gen.v = probe.generators[g];
      if (g < probe.targeted_blocks.size()) gen.block = probe.targeted_blocks[g];
      if (g < probe.target_omegas.size()) gen.omega = probe.target_omegas[g];
      gens_.push_back(std::move(gen));
    }
    meet_radius_ = 10.0 * options.axis_tol * hp.R.norm();
    refresh_generators();
    result_.perturbation = ComplexMatrix::Zero(hp.R.rows(), hp.R.cols());
  }

  TraceResult run(double t_max, int steps) {
    State cur = initial_state();
    assign_owners(cur);
    record(cur);
    for (int k = 1; k < steps; ++k) {
      const double target = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);
      if (!advance(cur, target, 0)) break;
    }
    result_.perturbation += (cur.t - t_base_) * mact_;
    return std::move(result_);
  }

 private:
  ComplexMatrix at(double t) const { return base_ - (t - t_base_) * mj_; }

  void refresh_generators() {
    const Index dim = base_.rows();
    mact_ = ComplexMatrix::Zero(dim, dim);
    for (const Generator& g : gens_) mact_ += g.v * g.v.adjoint();
    mj_ = mact_ * j_;
    mj_norm_ = spectral_norm(mj_);
  }

  int type_of(const ComplexMatrix& r, const std::vector<Complex>& pts, std::size_t i,
              bool on_axis) const {
    if (!on_axis || nearest_other(pts, i) <= meet_radius_) return 0;
    const ComplexVector u = null_vector(r, pts[i]);
    const double q = u.dot(kI * (j_ * u)).real();
    if (q > 1e-8) return 1;
    if (q < -1e-8) return -1;
    return 0;
  }

  void classify_state(const ComplexMatrix& r, State& s) const {
    const double band = options_.axis_tol * r.norm();
    s.axis.assign(s.pos.size(), false);
    s.type.assign(s.pos.size(), 0);
    for (std::size_t i = 0; i < s.pos.size(); ++i) s.axis[i] = std::abs(s.pos[i].real()) <= band;
    for (std::size_t i = 0; i < s.pos.size(); ++i) s.type[i] = type_of(r, s.pos, i, s.axis[i]);
  }

  State initial_state() const {
    State s;
    s.t = 0.0;
    s.pos = eigenvalues_of(base_, options_.tol);
    classify_state(base_, s);
    return s;
  }

  State evaluate(double t, const State& prev) const {
    const ComplexMatrix r = at(t);
    const std::vector<Complex> raw = eigenvalues_of(r, options_.tol);
    const std::vector<std::size_t> perm = match(prev.pos, raw);
    State s;
    s.t = t;
    s.pos.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) s.pos[i] = raw[perm[i]];
    classify_state(r, s);
    return s;
  }

  void record(const State& s) {
    result_.t_grid.push_back(s.t);
    result_.positions.push_back(s.pos);
    result_.on_axis.push_back(s.axis);
    result_.types.push_back(s.type);
  }

  void assign_owners(const State& s) {
    owner_.assign(s.pos.size(), -1);
    for (std::size_t i = 0; i < s.pos.size(); ++i) {
      if (!s.axis[i]) continue;
      double best = meet_radius_;
      for (const Generator& g : gens_) {
        if (g.block < 0) continue;
        const double d = std::abs(s.pos[i].imag() - g.omega);
        if (d <= best) {
          best = d;
          owner_[i] = g.block;
        }
      }
    }
  }

  // 0: continuous, 1: needs a finer step, 2: ambiguous even at the finest step.
  int continuity(const State& cur, const State& next, bool finest) const {
    const double dt = next.t - cur.t;
    const double floor = 100.0 * options_.tol * std::max(base_.norm(), 1.0);
    const double bound = 3.0 * dt * mj_norm_ + floor;
    int verdict = 0;
    for (std::size_t i = 0; i < cur.pos.size(); ++i) {
      const double disp = std::abs(next.pos[i] - cur.pos[i]);
      if (disp <= bound) continue;
      if (nearest_other(cur.pos, i) <= 2.0 * disp) continue;  // splitting of a near-multiple eigenvalue
      if (!finest) return 1;
      double second = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < next.pos.size(); ++j) {
        if (j != i) second = std::min(second, std::abs(next.pos[j] - cur.pos[i]));
      }
      if (second <= 1.05 * disp) verdict = 2;
    }
    return verdict;
  }

  // Adjacent axis trajectories, first type below second type, that meet
  // between `cur` and `next`.
  std::vector<std::pair<std::size_t, std::size_t>> meetings(const State& cur,
                                                            const State& next) const {
    std::vector<std::size_t> axis;
    for (std::size_t i = 0; i < cur.pos.size(); ++i) {
      if (cur.axis[i]) axis.push_back(i);
    }
    std::sort(axis.begin(), axis.end(),
              [&](std::size_t a, std::size_t b) { return cur.pos[a].imag() < cur.pos[b].imag(); });
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k + 1 < axis.size(); ++k) {
      const std::size_t a = axis[k];
      const std::size_t b = axis[k + 1];
      if (cur.type[a] != 1 || cur.type[b] != -1) continue;
      if (met(next, a, b)) out.emplace_back(a, b);
    }
    return out;
  }

  bool met(const State& s, std::size_t a, std::size_t b) const {
    return std::abs(s.pos[a] - s.pos[b]) <= meet_radius_ || !s.axis[a] || !s.axis[b] ||
           s.type[a] == -1 || s.type[b] == 1 || s.pos[a].imag() > s.pos[b].imag();
  }

  State bisect_meeting(const State& cur, const State& next, std::size_t a, std::size_t b) const {
    State lo = cur;
    State hi = next;
    for (int it = 0; it < 60 && hi.t - lo.t > 1e-13 * std::max(1.0, hi.t); ++it) {
      State mid = evaluate(0.5 * (lo.t + hi.t), lo);
      if (met(mid, a, b)) {
        hi = std::move(mid);
      } else {
        lo = std::move(mid);
      }
    }
    return hi;
  }

  void freeze(const State& s, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    result_.perturbation += (s.t - t_base_) * mact_;
    base_ = at(s.t);
    t_base_ = s.t;

    std::set<int> met_blocks;
    std::set<std::size_t> met_traj;
    for (const auto& [a, b] : pairs) {
      met_blocks.insert(owner_[a]);
      met_blocks.insert(owner_[b]);
      met_traj.insert(a);
      met_traj.insert(b);
    }
    const bool untagged = std::any_of(gens_.begin(), gens_.end(),
                                      [](const Generator& g) { return g.block < 0; });
    std::vector<Generator> kept;
    if (!untagged) {
      for (Generator& g : gens_) {
        if (met_blocks.count(g.block) != 0) continue;
        // rebuild from the current eigenvector of the block's single survivor
        std::optional<std::size_t> survivor;
        int count = 0;
        for (std::size_t i = 0; i < s.pos.size(); ++i) {
          if (owner_[i] == g.block && met_traj.count(i) == 0 && s.axis[i] && s.type[i] != 0) {
            survivor = i;
            ++count;
          }
        }
        if (count == 1) {
          const ComplexVector u = null_vector(base_, s.pos[*survivor]);
          const double q = u.dot(kI * (j_ * u)).real();
          const ComplexVector chain = u / std::sqrt(std::abs(q));
          const Complex eps = chain.dot(j_ * chain);
          g.v = (-delta_ / eps) * chain;
        }
        kept.push_back(std::move(g));
      }
    }
    gens_ = std::move(kept);
    refresh_generators();
    for (const auto& [a, b] : pairs) {
      result_.events.push_back({s.t,
                                TraceEventKind::kFrozen,
                                {s.pos[a].imag(), s.pos[b].imag()},
                                {static_cast<int>(a), static_cast<int>(b)}});
    }
  }

  void left_axis_events(const State& cur, const State& next,
                        const std::set<std::size_t>& skip = {}) {
    for (std::size_t i = 0; i < cur.pos.size(); ++i) {
      if (!cur.axis[i] || next.axis[i] || skip.count(i) != 0) continue;
      result_.events.push_back(
          {next.t, TraceEventKind::kLeftAxis, {cur.pos[i].imag()}, {static_cast<int>(i)}});
    }
  }

  bool advance(State& cur, double target, int depth) {
    State next = evaluate(target, cur);
    const int cont = continuity(cur, next, depth >= options_.max_halvings);
    if (cont == 1) {
      const double mid = 0.5 * (cur.t + target);
      return advance(cur, mid, depth + 1) && advance(cur, target, depth + 1);
    }
    if (cont == 2) {
      result_.truncated = true;
      result_.diagnostic = std::string(to_string(ErrorCode::kMatchingAmbiguity)) +
                           ": trajectories cannot be told apart between t = " +
                           format_double(cur.t) + " and t = " + format_double(target);
      return false;
    }
    const auto candidates = meetings(cur, next);
    if (!candidates.empty()) {
      std::optional<State> star;
      for (const auto& [a, b] : candidates) {
        State s = bisect_meeting(cur, next, a, b);
        if (!star || s.t < star->t) star = std::move(s);
      }
      std::vector<std::pair<std::size_t, std::size_t>> met_now;
      std::set<std::size_t> skip;
      for (const auto& [a, b] : candidates) {
        if (!met(*star, a, b)) continue;
        met_now.emplace_back(a, b);
        skip.insert(a);
        skip.insert(b);
      }
      left_axis_events(cur, *star, skip);
      record(*star);
      for (const auto& [a, b] : met_now) {
        result_.events.push_back({star->t,
                                  TraceEventKind::kMetOppositeType,
                                  {cur.pos[a].imag(), cur.pos[b].imag()},
                                  {static_cast<int>(a), static_cast<int>(b)}});
      }
      freeze(*star, met_now);
      cur = std::move(*star);
      if (cur.t >= target) return true;
      return advance(cur, target, depth);
    }
    left_axis_events(cur, next);
    record(next);
    cur = std::move(next);
    return true;
  }

  ComplexMatrix j_;
  ComplexMatrix base_;
  double t_base_ = 0.0;
  TraceOptions options_;
  double delta_ = 1.0;
  std::vector<Generator> gens_;
  ComplexMatrix mact_;
  ComplexMatrix mj_;
  double mj_norm_ = 0.0;
  double meet_radius_ = 0.0;
  std::vector<int> owner_;
  TraceResult result_;
};

}  // namespace

HamiltonianPair rank_one_update(const HamiltonianPair& hp, const ComplexMatrix& V) {
  if (V.rows() != hp.R.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "V has " + std::to_string(V.rows()) + " rows, expected " +
                    std::to_string(hp.R.rows()),
                "rank_one_update");
  }
  require_finite(V, "rank_one_update");
  HamiltonianPair out;
  out.n = hp.n;
  out.J = hp.J;
  out.R = hp.R + V * (hp.J * V).adjoint();
  return out;
}

ProbeMatrix construct_probe(const HamiltonianPair& hp, const AxisClassification& c, double delta,
                            const std::vector<int>& targets) {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be positive", "construct_probe");
  }
  std::vector<int> chosen = targets;
  if (chosen.empty()) {
    for (std::size_t b = 0; b < c.blocks.size(); ++b) chosen.push_back(static_cast<int>(b));
  }
  ProbeMatrix probe;
  probe.delta = delta;
  probe.M = ComplexMatrix::Zero(hp.R.rows(), hp.R.cols());
  for (int idx : chosen) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= c.blocks.size()) {
      throw Error(ErrorCode::kInvalidArgument, "target block index out of range",
                  "construct_probe");
    }
    const JordanBlockInfo& b = c.blocks[static_cast<std::size_t>(idx)];
    if (!b.has_chain_basis()) {
      throw Error(ErrorCode::kMissingChainBasis,
                  "block at omega = " + std::to_string(b.omega) + " has no chain basis",
                  "construct_probe");
    }
    // S* J s_last = -epsilon e_1
    const ComplexVector v = (-delta / b.epsilon) * b.chain_basis.col(b.size - 1);
    probe.M += v * v.adjoint();
    probe.generators.push_back(v);
    probe.targeted_blocks.push_back(idx);
    probe.target_omegas.push_back(b.omega);
    const ComplexVector jv = hp.J * v;
    for (std::size_t k = 0; k < c.blocks.size(); ++k) {
      if (static_cast<int>(k) == idx || !c.blocks[k].has_chain_basis()) continue;
      probe.cross_term_max =
          std::max(probe.cross_term_max, (c.blocks[k].chain_basis.adjoint() * jv).norm());
    }
  }
  return probe;
}

ProbeMatrix probe_from_matrix(const ComplexMatrix& M, double tol) {
  const HermitianEigen eig = eigen_hermitian(M, tol);
  const double band = tol * std::max(M.norm(), 1.0);
  ProbeMatrix probe;
  probe.M = hermitian_part(M);
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double mu = eig.eigenvalues(i);
    if (mu < -band) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "M has negative eigenvalue " + std::to_string(mu), "probe_from_matrix");
    }
    if (mu <= band) continue;
    probe.generators.push_back(std::sqrt(mu) * eig.eigenvectors.col(i));
    probe.targeted_blocks.push_back(-1);
    probe.target_omegas.push_back(0.0);
  }
  return probe;
}

TraceResult trace_eigenvalues(const HamiltonianPair& hp, const ProbeMatrix& probe, double t_max,
                              int steps, const TraceOptions& options) {
  if (steps < 2) {
    throw Error(ErrorCode::kInvalidArgument, "steps must be at least 2", "trace_eigenvalues");
  }
  if (!(t_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t_max must be positive", "trace_eigenvalues");
  }
  if (probe.M.rows() != hp.R.rows() || probe.M.cols() != hp.R.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "probe matrix does not match R",
                "trace_eigenvalues");
  }
  Tracer tracer(hp, probe, options);
  return tracer.run(t_max, steps);
}

void write_trace_csv(const TraceResult& trace, std::ostream& out) {
  out << "t,eig_index,re,im,on_axis\n";
  for (std::size_t k = 0; k < trace.t_grid.size(); ++k) {
    const std::string t = format_double(trace.t_grid[k]);
    for (std::size_t i = 0; i < trace.positions[k].size(); ++i) {
      out << t << ',' << i << ',' << format_double(trace.positions[k][i].real()) << ','
          << format_double(trace.positions[k][i].imag()) << ','
          << (trace.on_axis[k][i] ? 1 : 0) << '\n';
    }
  }
}

}  // namespace rineq
