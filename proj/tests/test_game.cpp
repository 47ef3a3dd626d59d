#include <doctest.h>

#include <cmath>

#include "qguess/game.hpp"
#include "qguess/measurements.hpp"
#include "qguess/rng.hpp"
#include "test_helpers.hpp"

using qg::Complex;
using qg::StateVector;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const double kCosPi8 = std::cos(qgtest::kPi / 8.0);
const double kSinPi8 = std::sin(qgtest::kPi / 8.0);

qg::MeasurementSet zx_set() {
  return qg::MeasurementSet::uniform(
      {qg::qubit_measurement({1.0, 0.0, 0.0}),
       qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0})});
}

}  // namespace

TEST_CASE("control state carries the weights and phases") {
  const StateVector uniform = qg::control_state(qg::mub_set(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(uniform[i] - kInvSqrt3) <= 1e-15);
  CHECK(std::abs(uniform.norm() - 1.0) <= 1e-15);

  const qg::MeasurementSet degenerate = qg::mub_set(3, 2, {1.0, 0.0}, {0.3, 1.7});
  const StateVector pinned = qg::control_state(degenerate);
  CHECK(std::abs(pinned[0] - std::polar(1.0, 0.3)) <= 1e-15);
  CHECK(std::abs(pinned[1]) == 0.0);
}

TEST_CASE("joint state for a single measurement is the rotated probe") {
  const qg::MeasurementSet single =
      qg::MeasurementSet::uniform({qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0})});
  qg::Prng prng(31);
  const StateVector probe = qgtest::random_state(prng, 2);
  const StateVector joint = qg::joint_state(qg::GameInstance(probe, single));
  REQUIRE(joint.dim() == 2);
  for (int k = 0; k < 2; ++k) {
    const Complex expect = qg::inner_product(single.measurement(0).outcome(k), probe);
    CHECK(std::abs(joint[k] - expect) <= 1e-15);
  }
  CHECK(std::abs(joint.norm() - 1.0) <= 1e-12);
}

TEST_CASE("joint state of the uniform three-basis qutrit instance") {
  qg::Prng prng(37);
  const StateVector probe = qgtest::random_state(prng, 3);
  const Complex al = probe[0], be = probe[1], ga = probe[2];
  const Complex w = std::polar(1.0, 2.0 * qgtest::kPi / 3.0);
  const Complex w2 = w * w;

  // coefficient table (alpha, beta, gamma combinations over control x outcome)
  const Complex expect[3][3] = {
      {al + be + ga, al + w2 * be + w * ga, al + w * be + w2 * ga},
      {al + w2 * be + w2 * ga, al + w * be + ga, al + be + w * ga},
      {al + w * be + w * ga, al + be + w2 * ga, al + w2 * be + ga},
  };

  const StateVector joint =
      qg::joint_state(qg::GameInstance(probe, qg::mub_set(3, 3)));
  REQUIRE(joint.dim() == 9);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(joint[i * 3 + k] - expect[i][k] / 3.0) <= 1e-14);
    }
  }
}

TEST_CASE("probe shared as an eigenstate confines the joint state to one outcome") {
  const qg::ProjectiveMeasurement m = qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0});
  const qg::MeasurementSet set = qg::MeasurementSet::uniform({m, m, m});
  const StateVector joint =
      qg::joint_state(qg::GameInstance(m.outcome(1), set));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(joint[i * 2 + 0]) <= 1e-15);
    CHECK(std::abs(joint[i * 2 + 1] - kInvSqrt3) <= 1e-14);
  }
}

TEST_CASE("post-selected ensemble of the solved two-basis instance") {
  const StateVector probe = StateVector::normalized({kCosPi8, kSinPi8});
  const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(probe, zx_set());
  REQUIRE(e.alice_outcomes() == 2);
  REQUIRE(e.control_dim() == 2);

  // hand expansion: u_0 proportional to (1, 1), u_1 proportional to (-1, 1)
  const double c0 = kCosPi8 * kInvSqrt2;
  const double c1 = kSinPi8 * kInvSqrt2;
  CHECK(std::abs(e.branch(0)[0] - c0) <= 1e-14);
  CHECK(std::abs(e.branch(0)[1] - c0) <= 1e-14);
  CHECK(std::abs(e.branch(1)[0] + c1) <= 1e-14);
  CHECK(std::abs(e.branch(1)[1] - c1) <= 1e-14);

  CHECK(std::abs(qg::inner_product(e.branch(0), e.branch(1))) <= 1e-15);
  CHECK(qg::perfect_guess_check(e, 1e-9));
  CHECK(std::abs(e.outcome_prob(0) + e.outcome_prob(1) - 1.0) <= 1e-12);

  // the computational probe does not decouple the branches
  const qg::PostSelectedEnsemble bad =
      qg::post_selected_ensemble(StateVector::normalized({1.0, 0.0}), zx_set());
  CHECK(std::abs(qg::inner_product(bad.branch(0), bad.branch(1)) - 0.25) <= 1e-14);
  CHECK_FALSE(qg::perfect_guess_check(bad, 1e-9));
}

TEST_CASE("single-measurement ensembles reproduce the Born rule") {
  const qg::ProjectiveMeasurement m = qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0});
  const qg::MeasurementSet single = qg::MeasurementSet::uniform({m});
  qg::Prng prng(41);
  const StateVector probe = qgtest::random_state(prng, 2);
  const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(probe, single);
  for (int a = 0; a < 2; ++a) {
    const double born = std::norm(qg::inner_product(m.outcome(a), probe));
    CHECK(std::abs(e.outcome_prob(a) - born) <= 1e-14);
  }
  // any single-outcome ensemble passes the perfect-guess check
  CHECK(qg::perfect_guess_check(
      qg::post_selected_ensemble(probe, single), 1e-9) ==
        (std::abs(qg::inner_product(e.branch(0), e.branch(1))) <= 1e-9));
}

TEST_CASE("identical measurements with an eigenstate probe fill one branch") {
  const qg::ProjectiveMeasurement m = qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0});
  const qg::MeasurementSet set =
      qg::MeasurementSet({m, m, m}, {0.5, 0.25, 0.25}, {0.1, 0.2, 0.3});
  const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(m.outcome(0), set);
  const StateVector control = qg::control_state(set);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(e.branch(0)[i] - control[i]) <= 1e-14);
  CHECK(e.branch(1).norm() <= 1e-14);
}

TEST_CASE("outcome probabilities agree with the joint-state projection") {
  qg::Prng prng(43);
  for (int t = 0; t < 30; ++t) {
    const auto [set, params] = qgtest::random_qubit_set(prng, 2 + t % 4, true, true);
    const StateVector probe = qgtest::random_state(prng, 2);
    const qg::GameInstance g(probe, set);
    const StateVector joint = qg::joint_state(g);
    const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(g);
    double total = 0.0;
    for (int a = 0; a < 2; ++a) {
      double p = 0.0;
      for (int i = 0; i < set.count(); ++i) p += std::norm(joint[i * 2 + a]);
      CHECK(std::abs(p - e.outcome_prob(a)) <= 1e-10);
      total += e.outcome_prob(a);
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("helstrom bound") {
  // orthogonal branches discriminate perfectly
  const qg::PostSelectedEnsemble orth(
      {StateVector::raw({kInvSqrt2, 0.0}), StateVector::raw({0.0, kInvSqrt2})});
  CHECK(qg::helstrom_success(orth) == 1.0);

  // identical branches leave a fair coin; the square root has infinite slope
  // at the branch point, so rounding in the overlap shows up at sqrt(eps)
  const qg::PostSelectedEnsemble same(
      {StateVector::raw({kInvSqrt2, 0.0}), StateVector::raw({kInvSqrt2, 0.0})});
  CHECK(std::abs(qg::helstrom_success(same) - 0.5) <= 1e-7);

  // overlap 0.3 gives success 0.9; cross-checked by the measurement sweep
  const double ov = 0.3;
  const qg::PostSelectedEnsemble tilted(
      {StateVector::raw({kInvSqrt2, 0.0}),
       StateVector::raw({ov * std::sqrt(2.0), std::sqrt(0.5 - 2.0 * ov * ov)})});
  CHECK(std::abs(std::abs(qg::inner_product(tilted.branch(0), tilted.branch(1))) - ov) <=
        1e-12);
  CHECK(std::abs(qg::helstrom_success(tilted) - 0.9) <= 1e-12);
  CHECK(std::abs(qgtest::two_state_sweep_success(tilted) - 0.9) <= 1e-6);

  const qg::PostSelectedEnsemble three(
      {StateVector::raw({1.0, 0.0, 0.0}), StateVector::raw({0.0, 0.0, 0.0}),
       StateVector::raw({0.0, 0.0, 0.0})});
  CHECK_THROWS_AS(qg::helstrom_success(three), std::invalid_argument);
}

TEST_CASE("square-root measurement success") {
  const qg::PostSelectedEnsemble orth(
      {StateVector::raw({kInvSqrt2, 0.0}), StateVector::raw({0.0, kInvSqrt2})});
  CHECK(std::abs(qg::pgm_success(orth) - 1.0) <= 1e-10);

  // B identical branches can do no better than 1/B
  const double third = 1.0 / std::sqrt(3.0);
  const qg::PostSelectedEnsemble same({StateVector::raw({third, 0.0}),
                                       StateVector::raw({third, 0.0}),
                                       StateVector::raw({third, 0.0})});
  CHECK(std::abs(qg::pgm_success(same) - 1.0 / 3.0) <= 1e-12);

  qg::Prng prng(47);
  for (int t = 0; t < 300; ++t) {
    const auto [set, params] = qgtest::random_qubit_set(prng, 2 + t % 4, true, true);
    const StateVector probe = qgtest::random_state(prng, 2);
    const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(probe, set);
    const double pgm = qg::pgm_success(e);
    const double hel = qg::helstrom_success(e);
    CHECK(pgm <= hel + 1e-12);
    CHECK(pgm >= 0.5 - 1e-12);
    // equality of the pgm with 1 exactly characterizes orthogonal branches
    CHECK((pgm >= 1.0 - 1e-9) == qg::perfect_guess_check(e, 1e-9));
  }
}

TEST_CASE("guessing basis construction") {
  const StateVector probe = StateVector::normalized({kCosPi8, kSinPi8});
  const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(probe, zx_set());
  const qg::ProjectiveMeasurement basis = qg::bob_basis(e, 1e-9);
  REQUIRE(basis.dim() == 2);
  CHECK(std::abs(std::abs(qg::inner_product(
                     basis.outcome(0), StateVector::normalized({kInvSqrt2, kInvSqrt2}))) -
                 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(qg::inner_product(
                     basis.outcome(1), StateVector::normalized({-kInvSqrt2, kInvSqrt2}))) -
                 1.0) <= 1e-12);

  // zero-norm branches get completion vectors
  const qg::ProjectiveMeasurement m = qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0});
  const qg::MeasurementSet set =
      qg::MeasurementSet({m, m, m}, {0.5, 0.25, 0.25}, {0.0, 0.0, 0.0});
  const qg::PostSelectedEnsemble eig = qg::post_selected_ensemble(m.outcome(0), set);
  const qg::ProjectiveMeasurement eig_basis = qg::bob_basis(eig, 1e-9);
  REQUIRE(eig_basis.dim() == 3);
  const StateVector control = qg::control_state(set);
  CHECK(std::abs(std::abs(qg::inner_product(eig_basis.outcome(0), control)) - 1.0) <= 1e-12);
  CHECK(qg::gram(eig_basis.basis()).max_offdiag() <= 1e-10);

  // a one-outcome game completes around its single branch
  const qg::MeasurementSet tiny = qg::MeasurementSet::uniform(
      {qg::computational_basis(1), qg::computational_basis(1)});
  const qg::PostSelectedEnsemble one =
      qg::post_selected_ensemble(StateVector::normalized({1.0}), tiny);
  const qg::ProjectiveMeasurement completion = qg::bob_basis(one, 1e-9);
  REQUIRE(completion.dim() == 2);
  CHECK(std::abs(std::abs(qg::inner_product(completion.outcome(0),
                                            qg::control_state(tiny))) -
                 1.0) <= 1e-12);

  // non-orthogonal ensembles are rejected
  const qg::PostSelectedEnsemble bad =
      qg::post_selected_ensemble(StateVector::normalized({1.0, 0.0}), zx_set());
  CHECK_THROWS_AS(qg::bob_basis(bad, 1e-9), std::invalid_argument);
}

TEST_CASE("round simulation hits exactly 1 on perfect instances") {
  const StateVector probe = StateVector::normalized({kCosPi8, kSinPi8});
  const qg::GameInstance g(probe, zx_set());
  const qg::ProjectiveMeasurement basis =
      qg::bob_basis(qg::post_selected_ensemble(g), 1e-9);
  CHECK(qg::simulate_rounds(g, basis, 100000, 5) == 1.0);
  CHECK(qg::simulate_rounds(g, basis, 1, 99) == 1.0);

  // shared eigenstate with the guess pinned on the control state
  const qg::ProjectiveMeasurement m = qg::qubit_measurement({kInvSqrt2, kInvSqrt2, 0.0});
  const qg::MeasurementSet set = qg::MeasurementSet::uniform({m, m});
  const qg::GameInstance shared(m.outcome(0), set);
  const qg::ProjectiveMeasurement shared_basis =
      qg::bob_basis(qg::post_selected_ensemble(shared), 1e-9);
  CHECK(qg::simulate_rounds(shared, shared_basis, 20000, 17) == 1.0);

  CHECK_THROWS_AS(qg::simulate_rounds(g, basis, 0, 1), std::invalid_argument);
}

TEST_CASE("round simulation tracks the exact rate for a mismatched basis") {
  // probe |0> with the basis solved for the pi/8 probe
  const StateVector good_probe = StateVector::normalized({kCosPi8, kSinPi8});
  const qg::ProjectiveMeasurement basis =
      qg::bob_basis(qg::post_selected_ensemble(good_probe, zx_set()), 1e-9);

  const qg::GameInstance g(StateVector::normalized({1.0, 0.0}), zx_set());
  const qg::PostSelectedEnsemble e = qg::post_selected_ensemble(g);
  double exact = 0.0;
  for (int a = 0; a < 2; ++a) {
    exact += std::norm(qg::inner_product(basis.outcome(a), e.branch(a)));
  }
  const long n = 200000;
  const double emp = qg::simulate_rounds(g, basis, n, 23);
  CHECK(emp < 1.0);
  const double sigma = std::sqrt(exact * (1.0 - exact) / n);
  CHECK(std::abs(emp - exact) <= 3.0 * sigma);
}
