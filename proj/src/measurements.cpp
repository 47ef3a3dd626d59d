#include "qguess/measurements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<StateVector> basis)
    : basis_(std::move(basis)) {
  if (basis_.empty()) {
    throw std::invalid_argument("ProjectiveMeasurement: empty basis");
  }
  const int d = basis_[0].dim();
  if (static_cast<int>(basis_.size()) != d) {
    throw std::invalid_argument("ProjectiveMeasurement: need exactly dim outcome vectors");
  }
  for (const StateVector& v : basis_) {
    if (v.dim() != d) {
      throw std::invalid_argument("ProjectiveMeasurement: outcome dimension mismatch");
    }
  }
  const GramMatrix g = gram(basis_);
  double dev = g.max_offdiag();
  for (int j = 0; j < d; ++j) dev = std::max(dev, std::abs(g(j, j) - 1.0));
  if (dev > kUnitaryTol) {
    throw std::invalid_argument("ProjectiveMeasurement: basis not orthonormal within tolerance");
  }
}

QubitMeasurementParams::QubitMeasurementParams(double a_in, double b_in, double phi_in)
    : a(a_in), b(b_in), phi(wrap_phase(phi_in)) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(phi_in)) {
    throw std::invalid_argument("QubitMeasurementParams: a and b must be finite and non-negative");
  }
  if (std::abs(a * a + b * b - 1.0) > kNormTol) {
    throw std::invalid_argument("QubitMeasurementParams: a^2 + b^2 must be 1");
  }
}

ProjectiveMeasurement qubit_measurement(const QubitMeasurementParams& p) {
  const Complex beta = std::polar(p.b, p.phi);
  std::vector<StateVector> basis;
  basis.push_back(StateVector::normalized({Complex(p.a), beta}));
  basis.push_back(StateVector::normalized({std::conj(beta), Complex(-p.a)}));
  return ProjectiveMeasurement(std::move(basis));
}

QubitMeasurementParams qubit_params(const ProjectiveMeasurement& m) {
  if (m.dim() != 2) throw std::invalid_argument("qubit_params: measurement is not a qubit");
  const StateVector& v0 = m.outcome(0);
  double a;
  Complex beta;
  if (std::abs(v0[0]) > kNormTol) {
    // rotate the global phase so the first amplitude is real non-negative
    const Complex g = std::conj(v0[0]) / std::abs(v0[0]);
    a = std::abs(v0[0]);
    beta = v0[1] * g;
  } else {
    // no first amplitude to anchor the global phase on; keep the second
    // amplitude's phase, which stays physically meaningful here
    a = 0.0;
    beta = v0[1];
  }
  const double scale = std::sqrt(a * a + std::norm(beta));
  a /= scale;
  beta /= scale;
  const double b = std::abs(beta);
  const double phi = (b > kNormTol) ? wrap_phase(std::arg(beta)) : 0.0;
  QubitMeasurementParams p(a, b, phi);

  // Outcome 1 must be the matching complement (b e^{-i phi}, -a) up to the
  // same global phase as outcome 0. An extra relative phase between the two
  // outcome vectors describes a different joint protocol even though the
  // projectors agree, and the closed-form solver does not cover it.
  const ProjectiveMeasurement canon = qubit_measurement(p);
  const Complex rel = inner_product(canon.outcome(0), m.outcome(0));
  const Complex cross = inner_product(canon.outcome(1), m.outcome(1));
  if (std::abs(rel) < 1.0 - kOrthTol || std::abs(cross - rel) > kOrthTol) {
    throw std::invalid_argument(
        "qubit_params: basis is not in canonical qubit form "
        "(outcome 1 carries a relative phase against outcome 0)");
  }
  return p;
}

ProjectiveMeasurement computational_basis(int dim) {
  if (dim <= 0) throw std::invalid_argument("computational_basis: dimension must be positive");
  std::vector<StateVector> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    std::vector<Complex> amps(static_cast<std::size_t>(dim), Complex(0.0));
    amps[static_cast<std::size_t>(j)] = 1.0;
    basis.push_back(StateVector::normalized(std::move(amps)));
  }
  return ProjectiveMeasurement(std::move(basis));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

StateVector mub_vector(int d, int k, int i) {
  if (!is_prime(d)) {
    throw std::invalid_argument("mub_vector: dimension must be prime");
  }
  if (k < 0 || k >= d || i < 0 || i >= d) {
    throw std::invalid_argument("mub_vector: indices out of range");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> amps(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const int e = (k * j * j + i * j) % d;
    amps[static_cast<std::size_t>(j)] = std::polar(scale, kTwoPi * e / d);
  }
  return StateVector::normalized(std::move(amps));
}

UnitaryMatrix mub_unitary(int d, int k) {
  std::vector<StateVector> cols;
  cols.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) cols.push_back(mub_vector(d, k, j));
  return UnitaryMatrix::from_columns(cols);
}

MeasurementSet::MeasurementSet(std::vector<ProjectiveMeasurement> measurements,
                               std::vector<double> weights, std::vector<double> phases)
    : measurements_(std::move(measurements)),
      weights_(std::move(weights)),
      phases_(std::move(phases)) {
  if (measurements_.empty()) throw std::invalid_argument("MeasurementSet: empty");
  const int d = measurements_[0].dim();
  for (const ProjectiveMeasurement& m : measurements_) {
    if (m.dim() != d) {
      throw std::invalid_argument("MeasurementSet: measurements must share one dimension");
    }
  }
  if (weights_.size() != measurements_.size() || phases_.size() != measurements_.size()) {
    throw std::invalid_argument("MeasurementSet: weights/phases length mismatch");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("MeasurementSet: weights must be non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kNormTol) {
    throw std::invalid_argument("MeasurementSet: weights must sum to 1");
  }
  for (double& p : phases_) p = wrap_phase(p);
}

MeasurementSet MeasurementSet::uniform(std::vector<ProjectiveMeasurement> measurements) {
  const std::size_t n = measurements.size();
  if (n == 0) throw std::invalid_argument("MeasurementSet: empty");
  return MeasurementSet(std::move(measurements),
                        std::vector<double>(n, 1.0 / static_cast<double>(n)),
                        std::vector<double>(n, 0.0));
}

Complex MeasurementSet::zeta(int i) const {
  return std::polar(std::sqrt(weight(i)), phase(i));
}

MeasurementSet mub_set(int d, int count, std::vector<double> weights,
                       std::vector<double> phases) {
  if (count < 1 || count > d) {
    throw std::invalid_argument("mub_set: count must be in [1, d]");
  }
  std::vector<ProjectiveMeasurement> ms;
  ms.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::vector<StateVector> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) basis.push_back(mub_vector(d, k, j));
    ms.emplace_back(std::move(basis));
  }
  return MeasurementSet(std::move(ms), std::move(weights), std::move(phases));
}

MeasurementSet mub_set(int d, int count) {
  if (count < 1) throw std::invalid_argument("mub_set: count must be positive");
  return mub_set(d, count, std::vector<double>(count, 1.0 / count),
                 std::vector<double>(count, 0.0));
}

}  // namespace qg
