#pragma once

#include <cstdint>
#include <vector>

#include "qguess/linalg.hpp"
#include "qguess/measurements.hpp"

namespace qg {

/// One round of the protocol: a probe state of dimension B sent into a set
/// of A projective measurements selected coherently by a control register
/// with amplitudes zeta_i.
struct GameInstance {
  StateVector probe;
  MeasurementSet set;

  GameInstance(StateVector probe_in, MeasurementSet set_in);
};

/// The B unnormalized control-register branches u_a conditioned on the
/// measurement outcome a: u_a[i] = zeta_i <M_i outcome a | probe>. Squared
/// norms are the outcome probabilities and sum to 1.
class PostSelectedEnsemble {
 public:
  explicit PostSelectedEnsemble(std::vector<StateVector> branches);

  int alice_outcomes() const noexcept { return static_cast<int>(branches_.size()); }  // B
  int control_dim() const noexcept { return branches_[0].dim(); }                     // A
  const StateVector& branch(int a) const { return branches_[static_cast<std::size_t>(a)]; }
  const std::vector<StateVector>& branches() const noexcept { return branches_; }
  double outcome_prob(int a) const { return probs_[static_cast<std::size_t>(a)]; }
  const std::vector<double>& outcome_probs() const noexcept { return probs_; }

 private:
  std::vector<StateVector> branches_;
  std::vector<double> probs_;
};

/// Dimension-A control state with amplitude sqrt(w_i) e^{i phase_i} at i.
StateVector control_state(const MeasurementSet& set);

/// Joint state sum_i zeta_i |i> (x) (U_i^dag |probe>), control-major
/// ordering, dimension A*B.
StateVector joint_state(const GameInstance& g);

PostSelectedEnsemble post_selected_ensemble(const GameInstance& g);

/// Same ensemble without copying the set into a GameInstance; probe must be
/// normalized and match the set dimension.
PostSelectedEnsemble post_selected_ensemble(const StateVector& probe,
                                            const MeasurementSet& set);

/// Largest pairwise overlap |<u_a|u_b>|, a != b, of the unnormalized
/// branches. Perfect guessing means this vanishes.
double max_pairwise_overlap(const PostSelectedEnsemble& e);

/// True iff max_pairwise_overlap(e) <= tol.
bool perfect_guess_check(const PostSelectedEnsemble& e, double tol);

/// Optimal success probability for discriminating the two branches of a
/// B = 2 ensemble: (1 + sqrt(1 - 4 |<u_0|u_1>|^2)) / 2, where the branch
/// norms carry the priors.
double helstrom_success(const PostSelectedEnsemble& e);

/// Square-root-measurement success probability: with S = sum_a u_a u_a^dag,
/// returns sum_a |u_a^dag S^{-1/2} u_a|^2 (pseudo-inverse on the support of
/// S). Equals 1 exactly when the branches are pairwise orthogonal; a lower
/// bound on the optimal success for B >= 2.
double pgm_success(const PostSelectedEnsemble& e);

/// Orthonormal guessing basis of dimension A whose vector a is the
/// normalized branch u_a; zero-norm branches and indices beyond B are filled
/// with a deterministic completion. Requires perfect_guess_check(e, tol) and
/// that every branch with norm above tol has index below A.
ProjectiveMeasurement bob_basis(const PostSelectedEnsemble& e, double tol);

/// Samples the outcome a from the branch probabilities, then the guess b
/// from the Born rule of the normalized branch u_a in `basis`, and returns
/// the fraction of rounds with a == b. Rounds are split into fixed-size
/// shards seeded seed + shard index, so the result is identical for the
/// serial and OpenMP variants and for any thread count.
double simulate_rounds(const GameInstance& g, const ProjectiveMeasurement& basis,
                       long rounds, std::uint64_t seed);

/// Serial reference for simulate_rounds; same shard decomposition, same result.
double simulate_rounds_serial(const GameInstance& g, const ProjectiveMeasurement& basis,
                              long rounds, std::uint64_t seed);

}  // namespace qg
