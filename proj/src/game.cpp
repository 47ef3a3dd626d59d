#include "qguess/game.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "qguess/rng.hpp"

namespace qg {

namespace {

constexpr long kSimShardSize = 4096;

}  // namespace

GameInstance::GameInstance(StateVector probe_in, MeasurementSet set_in)
    : probe(std::move(probe_in)), set(std::move(set_in)) {
  if (probe.dim() != set.dim()) {
    throw std::invalid_argument("GameInstance: probe dimension does not match measurements");
  }
  if (std::abs(probe.norm() - 1.0) > kUnitaryTol) {
    throw std::invalid_argument("GameInstance: probe must be normalized");
  }
}

PostSelectedEnsemble::PostSelectedEnsemble(std::vector<StateVector> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("PostSelectedEnsemble: empty");
  const int a_dim = branches_[0].dim();
  double total = 0.0;
  probs_.reserve(branches_.size());
  for (const StateVector& u : branches_) {
    if (u.dim() != a_dim) {
      throw std::invalid_argument("PostSelectedEnsemble: branch dimension mismatch");
    }
    const double p = u.norm() * u.norm();
    probs_.push_back(p);
    total += p;
  }
  if (std::abs(total - 1.0) > kUnitaryTol) {
    throw std::invalid_argument("PostSelectedEnsemble: outcome probabilities must sum to 1");
  }
}

StateVector control_state(const MeasurementSet& set) {
  std::vector<Complex> amps(static_cast<std::size_t>(set.count()));
  for (int i = 0; i < set.count(); ++i) amps[static_cast<std::size_t>(i)] = set.zeta(i);
  return StateVector::normalized(std::move(amps));
}

StateVector joint_state(const GameInstance& g) {
  const int a_count = g.set.count();
  const int b_dim = g.set.dim();
  std::vector<Complex> amps(static_cast<std::size_t>(a_count) * b_dim);
  for (int i = 0; i < a_count; ++i) {
    const Complex z = g.set.zeta(i);
    const ProjectiveMeasurement& m = g.set.measurement(i);
    for (int k = 0; k < b_dim; ++k) {
      // (U_i^dag probe)_k = <outcome k of measurement i | probe>
      amps[static_cast<std::size_t>(i) * b_dim + k] =
          z * inner_product(m.outcome(k), g.probe);
    }
  }
  return StateVector::normalized(std::move(amps));
}

PostSelectedEnsemble post_selected_ensemble(const GameInstance& g) {
  return post_selected_ensemble(g.probe, g.set);
}

PostSelectedEnsemble post_selected_ensemble(const StateVector& probe,
                                            const MeasurementSet& set) {
  if (probe.dim() != set.dim()) {
    throw std::invalid_argument("post_selected_ensemble: probe dimension mismatch");
  }
  const int a_count = set.count();
  const int b_dim = set.dim();
  std::vector<StateVector> branches;
  branches.reserve(static_cast<std::size_t>(b_dim));
  for (int a = 0; a < b_dim; ++a) {
    std::vector<Complex> amps(static_cast<std::size_t>(a_count));
    for (int i = 0; i < a_count; ++i) {
      amps[static_cast<std::size_t>(i)] =
          set.zeta(i) * inner_product(set.measurement(i).outcome(a), probe);
    }
    branches.push_back(StateVector::raw(std::move(amps)));
  }
  return PostSelectedEnsemble(std::move(branches));
}

double max_pairwise_overlap(const PostSelectedEnsemble& e) {
  double m = 0.0;
  const int b = e.alice_outcomes();
  for (int x = 0; x < b; ++x) {
    for (int y = x + 1; y < b; ++y) {
      m = std::max(m, std::abs(inner_product(e.branch(x), e.branch(y))));
    }
  }
  return m;
}

bool perfect_guess_check(const PostSelectedEnsemble& e, double tol) {
  return max_pairwise_overlap(e) <= tol;
}

double helstrom_success(const PostSelectedEnsemble& e) {
  if (e.alice_outcomes() != 2) {
    throw std::invalid_argument("helstrom_success: defined for two-outcome ensembles");
  }
  const double ov = std::abs(inner_product(e.branch(0), e.branch(1)));
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * ov * ov)));
}

double pgm_success(const PostSelectedEnsemble& e) {
  const int a_dim = e.control_dim();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(a_dim, a_dim);
  for (int a = 0; a < e.alice_outcomes(); ++a) {
    Eigen::VectorXcd u(a_dim);
    for (int i = 0; i < a_dim; ++i) u(i) = e.branch(a)[i];
    s += u * u.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
  Eigen::VectorXd inv_sqrt = es.eigenvalues();
  for (int k = 0; k < a_dim; ++k) {
    inv_sqrt(k) = inv_sqrt(k) > kEigFloor ? 1.0 / std::sqrt(inv_sqrt(k)) : 0.0;
  }
  const Eigen::MatrixXcd s_m = es.eigenvectors() * inv_sqrt.asDiagonal() *
                               es.eigenvectors().adjoint();
  double total = 0.0;
  for (int a = 0; a < e.alice_outcomes(); ++a) {
    Eigen::VectorXcd u(a_dim);
    for (int i = 0; i < a_dim; ++i) u(i) = e.branch(a)[i];
    total += std::norm(Complex(u.adjoint() * s_m * u));
  }
  return total;
}

ProjectiveMeasurement bob_basis(const PostSelectedEnsemble& e, double tol) {
  if (!perfect_guess_check(e, tol)) {
    throw std::invalid_argument("bob_basis: branches are not orthogonal within tolerance");
  }
  const int a_dim = e.control_dim();
  const int b = e.alice_outcomes();

  std::vector<int> live;
  for (int a = 0; a < b; ++a) {
    if (e.branch(a).norm() > tol) {
      if (a >= a_dim) {
        throw std::runtime_error(
            "bob_basis: branch with outcome index beyond the control dimension "
            "cannot be mapped to a guess");
      }
      live.push_back(a);
    }
  }

  // Tighten the live branches to constructor-level orthonormality, then
  // complete with standard basis vectors in a deterministic order. Branches
  // are normalized first so the completion drop threshold cannot touch them.
  std::vector<StateVector> gs;
  gs.reserve(live.size() + static_cast<std::size_t>(a_dim));
  for (int a : live) {
    std::vector<Complex> amps = e.branch(a).amps();
    const double n = e.branch(a).norm();
    for (Complex& z : amps) z /= n;
    gs.push_back(StateVector::normalized(std::move(amps)));
  }
  for (int k = 0; k < a_dim; ++k) {
    std::vector<Complex> amps(static_cast<std::size_t>(a_dim), Complex(0.0));
    amps[static_cast<std::size_t>(k)] = 1.0;
    gs.push_back(StateVector::raw(std::move(amps)));
  }
  const std::vector<StateVector> on = orthonormalize(gs, 1e-6);
  if (static_cast<int>(on.size()) != a_dim) {
    throw std::runtime_error("bob_basis: completion failed");
  }

  std::vector<std::optional<StateVector>> slots(static_cast<std::size_t>(a_dim));
  for (std::size_t i = 0; i < live.size(); ++i) {
    slots[static_cast<std::size_t>(live[i])] = on[i];
  }
  std::size_t next = live.size();
  for (int a = 0; a < a_dim; ++a) {
    if (!slots[static_cast<std::size_t>(a)].has_value()) {
      slots[static_cast<std::size_t>(a)] = on[next++];
    }
  }
  std::vector<StateVector> basis;
  basis.reserve(static_cast<std::size_t>(a_dim));
  for (auto& s : slots) basis.push_back(std::move(*s));
  return ProjectiveMeasurement(std::move(basis));
}

namespace {

// Sampling tables: Alice's outcome distribution and, per outcome with
// nonzero probability, Bob's Born distribution in the guessing basis.
struct RoundTables {
  std::vector<double> alice;             // p_a, length B
  std::vector<std::vector<double>> bob;  // q[a][b], length B x A (empty row if p_a = 0)
};

RoundTables make_tables(const GameInstance& g, const ProjectiveMeasurement& basis) {
  const PostSelectedEnsemble e = post_selected_ensemble(g);
  if (basis.dim() != e.control_dim()) {
    throw std::invalid_argument("simulate_rounds: basis dimension must match the control register");
  }
  RoundTables t;
  t.alice = e.outcome_probs();
  t.bob.resize(t.alice.size());
  for (int a = 0; a < e.alice_outcomes(); ++a) {
    const double n = e.branch(a).norm();
    if (n <= 0.0) continue;
    std::vector<double>& row = t.bob[static_cast<std::size_t>(a)];
    row.resize(static_cast<std::size_t>(basis.dim()));
    for (int b = 0; b < basis.dim(); ++b) {
      row[static_cast<std::size_t>(b)] =
          std::norm(inner_product(basis.outcome(b), e.branch(a))) / (n * n);
    }
  }
  return t;
}

int sample_index(const std::vector<double>& dist, double x) {
  double cum = 0.0;
  const int n = static_cast<int>(dist.size());
  for (int k = 0; k < n; ++k) {
    cum += dist[static_cast<std::size_t>(k)];
    if (x < cum) return k;
  }
  return n - 1;
}

long run_shard(const RoundTables& t, long rounds, std::uint64_t seed) {
  Prng prng(seed);
  long hits = 0;
  for (long r = 0; r < rounds; ++r) {
    const int a = sample_index(t.alice, prng.uniform());
    const std::vector<double>& row = t.bob[static_cast<std::size_t>(a)];
    if (row.empty()) continue;  // zero-probability outcome hit by the cdf fallback
    const int b = sample_index(row, prng.uniform());
    if (a == b) ++hits;
  }
  return hits;
}

}  // namespace

double simulate_rounds(const GameInstance& g, const ProjectiveMeasurement& basis,
                       long rounds, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("simulate_rounds: need at least one round");
  const RoundTables tables = make_tables(g, basis);
  const long shards = (rounds + kSimShardSize - 1) / kSimShardSize;
  long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (long s = 0; s < shards; ++s) {
    const long lo = s * kSimShardSize;
    const long count = std::min(kSimShardSize, rounds - lo);
    hits += run_shard(tables, count, seed + static_cast<std::uint64_t>(s));
  }
  return static_cast<double>(hits) / static_cast<double>(rounds);
}

double simulate_rounds_serial(const GameInstance& g, const ProjectiveMeasurement& basis,
                              long rounds, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("simulate_rounds: need at least one round");
  const RoundTables tables = make_tables(g, basis);
  const long shards = (rounds + kSimShardSize - 1) / kSimShardSize;
  long hits = 0;
  for (long s = 0; s < shards; ++s) {
    const long lo = s * kSimShardSize;
    const long count = std::min(kSimShardSize, rounds - lo);
    hits += run_shard(tables, count, seed + static_cast<std::uint64_t>(s));
  }
  return static_cast<double>(hits) / static_cast<double>(rounds);
}

}  // namespace qg
