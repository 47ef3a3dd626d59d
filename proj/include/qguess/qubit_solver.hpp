#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qguess/game.hpp"
#include "qguess/linalg.hpp"
#include "qguess/measurements.hpp"

namespace qg {

/// Per-measurement real triples (a_i, b_i, phi_i) after folding the control
/// weights in: a_i = sqrt(w_i) alpha_i, b_i = sqrt(w_i) |beta_i|. Control
/// phases do not enter. Every downstream formula is homogeneous in the
/// (a_i, b_i), so a common positive rescaling of the triples is irrelevant.
struct SolverInputs {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> phi;

  int count() const noexcept { return static_cast<int>(a.size()); }
};

/// The four sums the orthogonality condition reduces to, evaluated for one
/// probe phase candidate. x_re and x_im depend only on the measurement
/// parameters; y_re and y_im also depend on the probe phase.
struct SolverCoefficients {
  double x_re;
  double x_im;
  double y_re;
  double y_im;
};

/// Probe amplitudes before residual selection.
struct ProbeCandidate {
  double a;
  double b;
  double phi;
};

/// Closed-form perfect probe for a qubit measurement set.
struct QubitSolution {
  StateVector probe;  // (a, b e^{i phi})
  double a;
  double b;
  double phi;
  double residual;  // max branch overlap of the solved instance
  ProjectiveMeasurement bob_basis;
};

/// Thrown when no candidate probe reaches the orthogonality tolerance.
class solve_error : public std::runtime_error {
 public:
  solve_error(const std::string& what, double residual)
      : std::runtime_error(what), best_residual(residual) {}

  double best_residual;
};

/// Extracts solver triples from a qubit measurement set. Throws if the set
/// is not two-dimensional or a measurement is not in the canonical qubit
/// form (see qubit_params).
SolverInputs reparameterize(const MeasurementSet& set);

/// The probe-independent sums (x_re, x_im) = (-sum a_i b_i cos phi_i,
/// -sum a_i b_i sin phi_i).
std::pair<double, double> compute_x(const SolverInputs& in);

/// All four coefficient sums for a given probe phase.
SolverCoefficients compute_coefficients(const SolverInputs& in, double probe_phi);

/// Probe phase candidates. Returns the two arctangent branches {phi, phi+pi};
/// {pi/2, 3pi/2} when the denominator vanishes; {0} when the phase is
/// unconstrained (both sums vanish).
std::vector<double> solve_phase(const SolverInputs& in, double x_re, double x_im);

/// Solves x b^2 + y a b - x a^2 = 0 for the root with a > 0, b >= 0 and
/// a^2 + b^2 = 1. Throws when |x| <= 1e-12 (degenerate quadratic).
std::pair<double, double> solve_amplitudes(double x, double y);

/// Candidate probes in deterministic order: arctangent branches by ascending
/// phase, then the degenerate basis-state candidates when both x-sums vanish.
/// Inputs are rescaled to unit total weight internally.
std::vector<ProbeCandidate> enumerate_candidates(const SolverInputs& in);

/// Evaluates every candidate's branch overlap on the actual instance and
/// returns the best, with ties (within 1e-12) broken toward the smallest
/// phase. Throws solve_error when the best residual exceeds kOrthTol.
QubitSolution solve(const MeasurementSet& set);

}  // namespace qg
