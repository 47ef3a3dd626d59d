#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qguess/game.hpp"
#include "qguess/linalg.hpp"
#include "qguess/measurements.hpp"

namespace qg {

/// Number of real parameters of the probe chart: 2B - 2 (B - 1 polar angles
/// and B - 1 azimuthal phases; the first amplitude is real non-negative).
int probe_param_count(int dim);

/// Decodes chart parameters [theta_0..theta_{B-2}, phi_1..phi_{B-1}] into a
/// normalized probe with real non-negative first amplitude. Any real
/// parameter values are accepted (the chart wraps).
StateVector probe_from_params(std::span<const double> params, int dim);

/// Chart coordinates of a probe (global phase fixed on the first amplitude).
std::vector<double> params_from_probe(const StateVector& probe);

/// Standard downhill-simplex minimization of f, starting from x (updated in
/// place to the best point found). Stops after max_iters iterations or when
/// the simplex diameter falls below diam_tol. Returns the best value.
double nelder_mead(const std::function<double(std::span<const double>)>& f,
                   std::vector<double>& x, int max_iters, double diam_tol);

struct OptimizationResult {
  StateVector best_probe;
  double best_success;       // pgm_success, or helstrom_success when B = 2
  double best_residual;      // max branch overlap at the best probe
  double min_residual_seen;  // smallest branch overlap across all evaluations
  int restarts_used;
  std::uint64_t seed;
};

/// Multi-start derivative-free maximization of the guessing success over
/// probe states. Restart r runs from a random chart point drawn with
/// sub-seed seed + r; results merge by best success, then smaller residual,
/// then restart index, so serial and OpenMP runs agree exactly.
OptimizationResult maximize_success(const MeasurementSet& set, int restarts,
                                    int iters, std::uint64_t seed);

/// Serial reference for maximize_success; same sub-seeds, same result.
OptimizationResult maximize_success_serial(const MeasurementSet& set, int restarts,
                                           int iters, std::uint64_t seed);

struct SweepResult {
  double min_residual;
  StateVector best_probe;  // probe attaining min_residual
  long samples;
};

/// Minimum branch overlap over `samples` Haar-random probes (fixed-size
/// shards with sub-seed seed + shard index; serial and OpenMP variants
/// agree exactly).
SweepResult random_probe_sweep(const MeasurementSet& set, long samples,
                               std::uint64_t seed);
SweepResult random_probe_sweep_serial(const MeasurementSet& set, long samples,
                                      std::uint64_t seed);

/// The three pairwise-orthogonality sums for the three quadratic-family
/// bases on a qutrit, evaluated on probe (alpha, beta, gamma). Entry order:
/// pairs (0,1), (0,2), (1,2). Each equals 9 times the corresponding branch
/// overlap of the uniform three-basis instance.
std::array<Complex, 3> qutrit_mub_residuals(const StateVector& probe);

/// Deviation of the factorization of the difference of the first two
/// orthogonality sums: |sum_01 - sum_02 - 3 w (w - 1) (beta - gamma)
/// conj(beta + gamma)|, w = e^{2 pi i / 3}. Zero for every probe.
double factorization_identity_check(const StateVector& probe);

struct CommonEigenstate {
  StateVector vector;
  std::vector<int> labels;  // outcome index assigned by each measurement
};

/// Searches the outcome vectors of measurement 0 for a state that is an
/// outcome vector of every other measurement within tol (outcome labels may
/// differ per measurement).
std::optional<CommonEigenstate> common_eigenstate(const MeasurementSet& set,
                                                  double tol);

/// True iff every outcome vector of every measurement lies, within 1e-9, in
/// the span of one side of the given partition of the computational axes
/// (entries 0/1, both sides nonempty).
bool block_structure_check(const MeasurementSet& set,
                           const std::vector<int>& partition);

struct ProductConstruction {
  MeasurementSet set;     // dimension 2^n, prod(A_k) measurements
  StateVector probe;      // tensor product of the per-factor solved probes
  ProjectiveMeasurement bob_basis;
};

/// Builds the product game from per-qubit measurement sets: all measurement
/// combinations with product weights and summed phases, probed by the tensor
/// product of the per-factor closed-form probes. The result passes the
/// perfect-guess check.
ProductConstruction product_construction(const std::vector<MeasurementSet>& factors);

/// `count` Haar-random orthonormal bases of dimension `dim` (orthonormalized
/// complex Gaussian samples, first nonzero entry of each vector made real
/// positive), uniform weights, zero phases. Deterministic per seed.
MeasurementSet random_measurement_set(int dim, int count, std::uint64_t seed);

}  // namespace qg
