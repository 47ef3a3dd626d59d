#include "qguess/qubit_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSolverEps = 1e-12;  // branch decisions on unit-scale inputs
constexpr double kTieTol = 1e-12;     // residual ties resolve toward smaller phase

double wrap_phase(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

SolverInputs rescaled_to_unit(const SolverInputs& in) {
  double total = 0.0;
  for (int i = 0; i < in.count(); ++i) total += in.a[i] * in.a[i] + in.b[i] * in.b[i];
  if (!(total > 0.0)) {
    throw std::invalid_argument("qubit solver: inputs have zero scale");
  }
  const double s = 1.0 / std::sqrt(total);
  SolverInputs out = in;
  for (int i = 0; i < in.count(); ++i) {
    out.a[i] *= s;
    out.b[i] *= s;
  }
  return out;
}

// The three phase-independent sums behind the y coefficients:
//   y_re(phi) = p cos(phi) + q sin(phi)
//   y_im(phi) = r sin(phi) + q cos(phi)
struct YSums {
  double p;
  double q;
  double r;
};

YSums y_sums(const SolverInputs& in) {
  YSums s{0.0, 0.0, 0.0};
  for (int i = 0; i < in.count(); ++i) {
    const double a2 = in.a[i] * in.a[i];
    const double b2 = in.b[i] * in.b[i];
    s.p += -a2 + b2 * std::cos(2.0 * in.phi[i]);
    s.q += b2 * std::sin(2.0 * in.phi[i]);
    s.r += -a2 - b2 * std::cos(2.0 * in.phi[i]);
  }
  return s;
}

}  // namespace

SolverInputs reparameterize(const MeasurementSet& set) {
  if (set.dim() != 2) {
    throw std::invalid_argument("reparameterize: measurement set is not on qubits");
  }
  SolverInputs in;
  in.a.reserve(static_cast<std::size_t>(set.count()));
  in.b.reserve(static_cast<std::size_t>(set.count()));
  in.phi.reserve(static_cast<std::size_t>(set.count()));
  for (int i = 0; i < set.count(); ++i) {
    const QubitMeasurementParams p = qubit_params(set.measurement(i));
    const double s = std::sqrt(set.weight(i));
    in.a.push_back(s * p.a);
    in.b.push_back(s * p.b);
    in.phi.push_back(p.phi);
  }
  return in;
}

std::pair<double, double> compute_x(const SolverInputs& in) {
  double x_re = 0.0;
  double x_im = 0.0;
  for (int i = 0; i < in.count(); ++i) {
    x_re -= in.a[i] * in.b[i] * std::cos(in.phi[i]);
    x_im -= in.a[i] * in.b[i] * std::sin(in.phi[i]);
  }
  return {x_re, x_im};
}

SolverCoefficients compute_coefficients(const SolverInputs& in, double probe_phi) {
  const auto [x_re, x_im] = compute_x(in);
  const YSums s = y_sums(in);
  return SolverCoefficients{
      x_re,
      x_im,
      s.p * std::cos(probe_phi) + s.q * std::sin(probe_phi),
      s.r * std::sin(probe_phi) + s.q * std::cos(probe_phi),
  };
}

std::vector<double> solve_phase(const SolverInputs& in, double x_re, double x_im) {
  const YSums s = y_sums(in);
  const double num = x_im * s.p - x_re * s.q;
  const double den = x_re * s.r - x_im * s.q;
  if (std::abs(num) <= kSolverEps && std::abs(den) <= kSolverEps) {
    // phase unconstrained; the amplitude equations carry all the content
    return {0.0};
  }
  if (std::abs(den) <= kSolverEps) {
    return {std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 2.0};
  }
  double p0 = wrap_phase(std::atan(num / den));
  double p1 = wrap_phase(p0 + std::numbers::pi);
  if (p1 < p0) std::swap(p0, p1);
  return {p0, p1};
}

std::pair<double, double> solve_amplitudes(double x, double y) {
  if (std::abs(x) <= kSolverEps) {
    throw std::invalid_argument("solve_amplitudes: quadratic degenerates for x ~ 0");
  }
  // x t^2 + y t - x = 0 has roots with product -1; pick the non-negative one.
  const double t = (-y + std::copysign(std::sqrt(y * y + 4.0 * x * x), x)) / (2.0 * x);
  const double a = 1.0 / std::sqrt(1.0 + t * t);
  return {a, t * a};
}

std::vector<ProbeCandidate> enumerate_candidates(const SolverInputs& raw) {
  const SolverInputs in = rescaled_to_unit(raw);
  const auto [x_re, x_im] = compute_x(in);
  std::vector<ProbeCandidate> out;
  for (double phi : solve_phase(in, x_re, x_im)) {
    const SolverCoefficients c = compute_coefficients(in, phi);
    if (std::abs(c.x_re) > kSolverEps) {
      const auto [a, b] = solve_amplitudes(c.x_re, c.y_re);
      out.push_back({a, b, phi});
    } else if (std::abs(c.x_im) > kSolverEps) {
      // the real equation is trivial here; the imaginary one has the same shape
      const auto [a, b] = solve_amplitudes(c.x_im, c.y_im);
      out.push_back({a, b, phi});
    }
  }
  if (std::abs(x_re) <= kSolverEps && std::abs(x_im) <= kSolverEps) {
    out.push_back({1.0, 0.0, 0.0});
    out.push_back({0.0, 1.0, 0.0});
  }
  return out;
}

QubitSolution solve(const MeasurementSet& set) {
  const SolverInputs in = reparameterize(set);
  const std::vector<ProbeCandidate> candidates = enumerate_candidates(in);
  if (candidates.empty()) {
    throw solve_error("qubit solve: no candidate probes", 1.0);
  }

  bool have_best = false;
  ProbeCandidate best{};
  double best_residual = 0.0;
  for (const ProbeCandidate& c : candidates) {
    const StateVector probe =
        StateVector::normalized({Complex(c.a), std::polar(c.b, c.phi)});
    const double r = max_pairwise_overlap(
        post_selected_ensemble(probe, set));
    // candidates arrive ordered by phase (degenerate ones last); a later one
    // must win by more than the tie tolerance
    if (!have_best || r < best_residual - kTieTol) {
      have_best = true;
      best = c;
      best_residual = r;
    }
  }
  if (best_residual > kOrthTol) {
    throw solve_error("qubit solve: best candidate residual " +
                          std::to_string(best_residual) + " exceeds tolerance",
                      best_residual);
  }
  StateVector probe = StateVector::normalized({Complex(best.a), std::polar(best.b, best.phi)});
  const PostSelectedEnsemble ensemble =
      post_selected_ensemble(probe, set);
  ProjectiveMeasurement basis = bob_basis(ensemble, kOrthTol);
  return QubitSolution{std::move(probe), best.a,        best.b,
                       best.phi,         best_residual, std::move(basis)};
}

}  // namespace qg
