#pragma once

#include <vector>

#include "qguess/linalg.hpp"

namespace qg {

/// Ordered orthonormal basis of dimension B; outcome j corresponds to
/// basis vector j. Orthonormality is validated at construction.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<StateVector> basis);

  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const StateVector& outcome(int j) const { return basis_[static_cast<std::size_t>(j)]; }
  const std::vector<StateVector>& basis() const noexcept { return basis_; }

 private:
  std::vector<StateVector> basis_;
};

/// Qubit measurement parameters (a, b, phi) with a >= 0, b >= 0,
/// a^2 + b^2 = 1 and phi in [0, 2*pi). The measured basis pair is
/// (a, b e^{i phi}) and (b e^{-i phi}, -a).
struct QubitMeasurementParams {
  double a;
  double b;
  double phi;

  QubitMeasurementParams(double a, double b, double phi);
};

ProjectiveMeasurement qubit_measurement(const QubitMeasurementParams& p);

/// Reads (a, b, phi) back from a qubit measurement. Requires the basis to be
/// in the convention produced by qubit_measurement: outcome 0 carries a real
/// non-negative first amplitude up to a global phase, and outcome 1 is the
/// matching complement with no extra relative phase. phi is defined as 0
/// when b = 0.
QubitMeasurementParams qubit_params(const ProjectiveMeasurement& m);

ProjectiveMeasurement computational_basis(int dim);

/// Trial division; dimensions here are tiny.
bool is_prime(int n);

/// Outcome vector i of basis k from the quadratic-exponent family
/// (1/sqrt(d)) sum_j omega^{k j^2 + i j} |j>, omega = e^{2 pi i / d}.
/// Requires prime d.
StateVector mub_vector(int d, int k, int i);

/// Unitary whose column j is mub_vector(d, k, j), so U_k|j> is the j-th
/// outcome vector of basis k.
UnitaryMatrix mub_unitary(int d, int k);

/// A projective measurements of common dimension B with control amplitudes
/// zeta_i split into weights w_i = |zeta_i|^2 (summing to 1) and phases
/// arg(zeta_i), normalized into [0, 2*pi).
class MeasurementSet {
 public:
  MeasurementSet(std::vector<ProjectiveMeasurement> measurements,
                 std::vector<double> weights, std::vector<double> phases);

  /// Uniform weights, zero phases.
  static MeasurementSet uniform(std::vector<ProjectiveMeasurement> measurements);

  int count() const noexcept { return static_cast<int>(measurements_.size()); }
  int dim() const noexcept { return measurements_[0].dim(); }
  const ProjectiveMeasurement& measurement(int i) const {
    return measurements_[static_cast<std::size_t>(i)];
  }
  const std::vector<ProjectiveMeasurement>& measurements() const noexcept {
    return measurements_;
  }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  double phase(int i) const { return phases_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& phases() const noexcept { return phases_; }
  /// sqrt(w_i) e^{i phase_i}.
  Complex zeta(int i) const;

 private:
  std::vector<ProjectiveMeasurement> measurements_;
  std::vector<double> weights_;
  std::vector<double> phases_;
};

/// Measurement i of the set is the basis of mub_unitary(d, i), i < count <= d.
/// The computational basis is available separately via computational_basis().
MeasurementSet mub_set(int d, int count, std::vector<double> weights,
                       std::vector<double> phases);
MeasurementSet mub_set(int d, int count);

}  // namespace qg
