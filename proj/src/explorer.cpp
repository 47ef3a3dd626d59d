#include "qguess/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qguess/qubit_solver.hpp"
#include "qguess/rng.hpp"

namespace qg {

namespace {

constexpr long kSweepShardSize = 8192;
constexpr double kSimplexStep = 0.5;

}  // namespace

int probe_param_count(int dim) {
  if (dim < 1) throw std::invalid_argument("probe_param_count: dimension must be positive");
  return 2 * dim - 2;
}

StateVector probe_from_params(std::span<const double> params, int dim) {
  if (static_cast<int>(params.size()) != probe_param_count(dim)) {
    throw std::invalid_argument("probe_from_params: wrong parameter count");
  }
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  if (dim == 1) {
    amps[0] = 1.0;
    return StateVector::normalized(std::move(amps));
  }
  const std::span<const double> theta = params.first(static_cast<std::size_t>(dim - 1));
  const std::span<const double> phase = params.last(static_cast<std::size_t>(dim - 1));
  // magnitudes may come out negative for unconstrained angles, so build the
  // complex values by multiplication rather than std::polar
  double sines = 1.0;
  for (int k = 0; k < dim - 1; ++k) {
    const double mag = sines * std::cos(theta[static_cast<std::size_t>(k)]);
    if (k == 0) {
      amps[0] = Complex(mag);
    } else {
      const double ph = phase[static_cast<std::size_t>(k - 1)];
      amps[static_cast<std::size_t>(k)] = mag * Complex(std::cos(ph), std::sin(ph));
    }
    sines *= std::sin(theta[static_cast<std::size_t>(k)]);
  }
  const double last_ph = phase[static_cast<std::size_t>(dim - 2)];
  amps[static_cast<std::size_t>(dim - 1)] =
      sines * Complex(std::cos(last_ph), std::sin(last_ph));
  if (amps[0].real() < 0.0) {
    for (Complex& z : amps) z = -z;
  }
  // the chart telescopes to unit norm up to rounding; tidy it
  double n = 0.0;
  for (const Complex& z : amps) n += std::norm(z);
  n = std::sqrt(n);
  for (Complex& z : amps) z /= n;
  return StateVector::normalized(std::move(amps));
}

std::vector<double> params_from_probe(const StateVector& probe) {
  const int dim = probe.dim();
  std::vector<double> params(static_cast<std::size_t>(probe_param_count(dim)), 0.0);
  if (dim == 1) return params;
  // fix the global phase on the first amplitude
  Complex g = 1.0;
  if (std::abs(probe[0]) > kNormTol) g = std::conj(probe[0]) / std::abs(probe[0]);
  std::vector<Complex> v(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = probe[k] * g;

  double sines = 1.0;
  for (int k = 0; k < dim - 1; ++k) {
    const double mag = std::abs(v[static_cast<std::size_t>(k)]);
    double c = (sines > kNormTol) ? mag / sines : 1.0;
    c = std::clamp(c, -1.0, 1.0);
    params[static_cast<std::size_t>(k)] = std::acos(c);
    sines *= std::sin(params[static_cast<std::size_t>(k)]);
    if (k > 0) {
      params[static_cast<std::size_t>(dim - 2 + k)] =
          std::arg(v[static_cast<std::size_t>(k)]);
    }
  }
  params[static_cast<std::size_t>(2 * dim - 3)] =
      std::arg(v[static_cast<std::size_t>(dim - 1)]);
  return params;
}

double nelder_mead(const std::function<double(std::span<const double>)>& f,
                   std::vector<double>& x, int max_iters, double diam_tol) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return f(x);

  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n + 1), x);
  std::vector<double> val(static_cast<std::size_t>(n + 1));
  for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(k)] += kSimplexStep;
  for (int k = 0; k <= n; ++k) val[static_cast<std::size_t>(k)] = f(pts[static_cast<std::size_t>(k)]);

  std::vector<int> order(static_cast<std::size_t>(n + 1));
  std::vector<double> centroid(static_cast<std::size_t>(n)), trial(static_cast<std::size_t>(n));

  for (int iter = 0; iter < max_iters; ++iter) {
    for (int k = 0; k <= n; ++k) order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return val[static_cast<std::size_t>(a)] < val[static_cast<std::size_t>(b)]; });
    const int best = order[0];
    const int worst = order[static_cast<std::size_t>(n)];
    const int second_worst = order[static_cast<std::size_t>(n - 1)];

    double diam = 0.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) {
        const double dd = pts[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])][static_cast<std::size_t>(j)] -
                          pts[static_cast<std::size_t>(best)][static_cast<std::size_t>(j)];
        d += dd * dd;
      }
      diam = std::max(diam, std::sqrt(d));
    }
    if (diam < diam_tol) break;

    centroid.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (int j = 0; j < n; ++j) centroid[static_cast<std::size_t>(j)] += pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < n; ++j) centroid[static_cast<std::size_t>(j)] /= n;

    auto blend = [&](double coef) {
      for (int j = 0; j < n; ++j) {
        trial[static_cast<std::size_t>(j)] =
            centroid[static_cast<std::size_t>(j)] +
            coef * (pts[static_cast<std::size_t>(worst)][static_cast<std::size_t>(j)] - centroid[static_cast<std::size_t>(j)]);
      }
    };

    blend(-1.0);  // reflection
    const double fr = f(trial);
    if (fr < val[static_cast<std::size_t>(best)]) {
      std::vector<double> reflected = trial;
      blend(-2.0);  // expansion
      const double fe = f(trial);
      if (fe < fr) {
        pts[static_cast<std::size_t>(worst)] = trial;
        val[static_cast<std::size_t>(worst)] = fe;
      } else {
        pts[static_cast<std::size_t>(worst)] = std::move(reflected);
        val[static_cast<std::size_t>(worst)] = fr;
      }
    } else if (fr < val[static_cast<std::size_t>(second_worst)]) {
      pts[static_cast<std::size_t>(worst)] = trial;
      val[static_cast<std::size_t>(worst)] = fr;
    } else {
      blend(0.5);  // contraction
      const double fc = f(trial);
      if (fc < val[static_cast<std::size_t>(worst)]) {
        pts[static_cast<std::size_t>(worst)] = trial;
        val[static_cast<std::size_t>(worst)] = fc;
      } else {
        for (int k = 0; k <= n; ++k) {  // shrink toward the best vertex
          if (k == best) continue;
          for (int j = 0; j < n; ++j) {
            pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                0.5 * (pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] +
                       pts[static_cast<std::size_t>(best)][static_cast<std::size_t>(j)]);
          }
          val[static_cast<std::size_t>(k)] = f(pts[static_cast<std::size_t>(k)]);
        }
      }
    }
  }

  int best = 0;
  for (int k = 1; k <= n; ++k) {
    if (val[static_cast<std::size_t>(k)] < val[static_cast<std::size_t>(best)]) best = k;
  }
  x = pts[static_cast<std::size_t>(best)];
  return val[static_cast<std::size_t>(best)];
}

namespace {

struct RestartOutcome {
  std::vector<Complex> probe;
  double success = 0.0;
  double residual = 0.0;
  double min_residual_seen = std::numeric_limits<double>::infinity();
};

RestartOutcome run_restart(const MeasurementSet& set, int iters, std::uint64_t sub_seed) {
  const int b_dim = set.dim();
  const int n = probe_param_count(b_dim);
  Prng prng(sub_seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < b_dim - 1; ++k) x[static_cast<std::size_t>(k)] = prng.uniform(std::numbers::pi);
  for (int k = b_dim - 1; k < n; ++k) x[static_cast<std::size_t>(k)] = prng.uniform(2.0 * std::numbers::pi);

  RestartOutcome out;
  auto objective = [&](std::span<const double> p) {
    const StateVector probe = probe_from_params(p, b_dim);
    const PostSelectedEnsemble e = post_selected_ensemble(probe, set);
    out.min_residual_seen = std::min(out.min_residual_seen, max_pairwise_overlap(e));
    const double success = (b_dim == 2) ? helstrom_success(e) : pgm_success(e);
    return -success;
  };
  const double fbest = nelder_mead(objective, x, iters, 1e-10);

  const StateVector probe = probe_from_params(x, b_dim);
  out.probe = probe.amps();
  out.success = -fbest;
  out.residual = max_pairwise_overlap(post_selected_ensemble(probe, set));
  return out;
}

OptimizationResult merge_restarts(std::vector<RestartOutcome>& runs, std::uint64_t seed) {
  int best = 0;
  double min_seen = std::numeric_limits<double>::infinity();
  for (int r = 0; r < static_cast<int>(runs.size()); ++r) {
    min_seen = std::min(min_seen, runs[static_cast<std::size_t>(r)].min_residual_seen);
    const RestartOutcome& c = runs[static_cast<std::size_t>(r)];
    const RestartOutcome& b = runs[static_cast<std::size_t>(best)];
    if (c.success > b.success ||
        (c.success == b.success && c.residual < b.residual)) {
      best = r;
    }
  }
  RestartOutcome& w = runs[static_cast<std::size_t>(best)];
  return OptimizationResult{StateVector::normalized(std::move(w.probe)),
                            w.success,
                            w.residual,
                            min_seen,
                            static_cast<int>(runs.size()),
                            seed};
}

}  // namespace

OptimizationResult maximize_success(const MeasurementSet& set, int restarts,
                                    int iters, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("maximize_success: need at least one restart");
  std::vector<RestartOutcome> runs(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    runs[static_cast<std::size_t>(r)] =
        run_restart(set, iters, seed + static_cast<std::uint64_t>(r));
  }
  return merge_restarts(runs, seed);
}

OptimizationResult maximize_success_serial(const MeasurementSet& set, int restarts,
                                           int iters, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("maximize_success: need at least one restart");
  std::vector<RestartOutcome> runs(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    runs[static_cast<std::size_t>(r)] =
        run_restart(set, iters, seed + static_cast<std::uint64_t>(r));
  }
  return merge_restarts(runs, seed);
}

namespace {

StateVector random_probe(int dim, Prng& prng) {
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  double n = 0.0;
  do {
    for (Complex& z : amps) z = Complex(prng.gaussian(), prng.gaussian());
    n = 0.0;
    for (const Complex& z : amps) n += std::norm(z);
  } while (n < 1e-12);
  n = std::sqrt(n);
  for (Complex& z : amps) z /= n;
  return StateVector::normalized(std::move(amps));
}

struct ShardMin {
  double residual = std::numeric_limits<double>::infinity();
  std::vector<Complex> probe;
};

ShardMin sweep_shard(const MeasurementSet& set, long count, std::uint64_t sub_seed) {
  Prng prng(sub_seed);
  ShardMin best;
  for (long s = 0; s < count; ++s) {
    const StateVector probe = random_probe(set.dim(), prng);
    const double r = max_pairwise_overlap(post_selected_ensemble(probe, set));
    if (r < best.residual) {
      best.residual = r;
      best.probe = probe.amps();
    }
  }
  return best;
}

SweepResult merge_shards(std::vector<ShardMin>& mins, long samples) {
  int best = 0;
  for (int s = 1; s < static_cast<int>(mins.size()); ++s) {
    if (mins[static_cast<std::size_t>(s)].residual < mins[static_cast<std::size_t>(best)].residual) {
      best = s;
    }
  }
  return SweepResult{mins[static_cast<std::size_t>(best)].residual,
                     StateVector::normalized(std::move(mins[static_cast<std::size_t>(best)].probe)),
                     samples};
}

}  // namespace

SweepResult random_probe_sweep(const MeasurementSet& set, long samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("random_probe_sweep: need at least one sample");
  const long shards = (samples + kSweepShardSize - 1) / kSweepShardSize;
  std::vector<ShardMin> mins(static_cast<std::size_t>(shards));
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < shards; ++s) {
    const long lo = s * kSweepShardSize;
    const long count = std::min(kSweepShardSize, samples - lo);
    mins[static_cast<std::size_t>(s)] = sweep_shard(set, count, seed + static_cast<std::uint64_t>(s));
  }
  return merge_shards(mins, samples);
}

SweepResult random_probe_sweep_serial(const MeasurementSet& set, long samples,
                                      std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("random_probe_sweep: need at least one sample");
  const long shards = (samples + kSweepShardSize - 1) / kSweepShardSize;
  std::vector<ShardMin> mins(static_cast<std::size_t>(shards));
  for (long s = 0; s < shards; ++s) {
    const long lo = s * kSweepShardSize;
    const long count = std::min(kSweepShardSize, samples - lo);
    mins[static_cast<std::size_t>(s)] = sweep_shard(set, count, seed + static_cast<std::uint64_t>(s));
  }
  return merge_shards(mins, samples);
}

std::array<Complex, 3> qutrit_mub_residuals(const StateVector& probe) {
  if (probe.dim() != 3) {
    throw std::invalid_argument("qutrit_mub_residuals: probe must be three-dimensional");
  }
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex w2 = w * w;
  const Complex al = probe[0], be = probe[1], ga = probe[2];

  // post-selected vectors (times 3) of the uniform three-basis instance, one
  // array per measurement outcome, components running over the control index
  const Complex f0[3] = {al + be + ga, al + w2 * be + w2 * ga, al + w * be + w * ga};
  const Complex f1[3] = {al + w2 * be + w * ga, al + w * be + ga, al + be + w2 * ga};
  const Complex f2[3] = {al + w * be + w2 * ga, al + be + w * ga, al + w2 * be + ga};

  std::array<Complex, 3> out{};
  for (int i = 0; i < 3; ++i) {
    out[0] += std::conj(f0[i]) * f1[i];
    out[1] += std::conj(f0[i]) * f2[i];
    out[2] += std::conj(f1[i]) * f2[i];
  }
  return out;
}

double factorization_identity_check(const StateVector& probe) {
  const std::array<Complex, 3> e = qutrit_mub_residuals(probe);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  // collecting the conjugate sums term by term gives the constant 3 w (w - 1)
  const Complex factor = 3.0 * w * (w - 1.0);
  const Complex rhs = factor * (probe[1] - probe[2]) * std::conj(probe[1] + probe[2]);
  return std::abs(e[0] - e[1] - rhs);
}

std::optional<CommonEigenstate> common_eigenstate(const MeasurementSet& set, double tol) {
  const int b_dim = set.dim();
  for (int j = 0; j < b_dim; ++j) {
    const StateVector& v = set.measurement(0).outcome(j);
    std::vector<int> labels(static_cast<std::size_t>(set.count()), -1);
    labels[0] = j;
    bool shared = true;
    for (int i = 1; i < set.count() && shared; ++i) {
      shared = false;
      for (int k = 0; k < b_dim; ++k) {
        if (std::abs(inner_product(v, set.measurement(i).outcome(k))) >= 1.0 - tol) {
          labels[static_cast<std::size_t>(i)] = k;
          shared = true;
          break;
        }
      }
    }
    if (shared) return CommonEigenstate{v, std::move(labels)};
  }
  return std::nullopt;
}

bool block_structure_check(const MeasurementSet& set, const std::vector<int>& partition) {
  const int b_dim = set.dim();
  if (static_cast<int>(partition.size()) != b_dim) {
    throw std::invalid_argument("block_structure_check: partition length mismatch");
  }
  int ones = 0;
  for (int p : partition) {
    if (p != 0 && p != 1) {
      throw std::invalid_argument("block_structure_check: partition entries must be 0 or 1");
    }
    ones += p;
  }
  if (ones == 0 || ones == b_dim) {
    throw std::invalid_argument("block_structure_check: partition must be nontrivial");
  }
  for (const ProjectiveMeasurement& m : set.measurements()) {
    for (int j = 0; j < b_dim; ++j) {
      double mass[2] = {0.0, 0.0};
      for (int k = 0; k < b_dim; ++k) {
        mass[partition[static_cast<std::size_t>(k)]] += std::norm(m.outcome(j)[k]);
      }
      // residual norm outside the closer subspace
      if (std::sqrt(std::min(mass[0], mass[1])) > kOrthTol) return false;
    }
  }
  return true;
}

ProductConstruction product_construction(const std::vector<MeasurementSet>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product_construction: need at least one factor");
  }
  std::vector<QubitSolution> solved;
  solved.reserve(factors.size());
  for (const MeasurementSet& f : factors) solved.push_back(solve(f));

  // enumerate measurement combinations, first factor most significant
  long combos = 1;
  int b_dim = 1;
  for (const MeasurementSet& f : factors) {
    combos *= f.count();
    b_dim *= 2;
  }

  std::vector<ProjectiveMeasurement> measurements;
  std::vector<double> weights, phases;
  measurements.reserve(static_cast<std::size_t>(combos));
  for (long c = 0; c < combos; ++c) {
    long rest = c;
    std::vector<int> idx(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      idx[k] = static_cast<int>(rest % factors[k].count());
      rest /= factors[k].count();
    }
    double w = 1.0, ph = 0.0;
    std::vector<StateVector> basis;
    basis.reserve(static_cast<std::size_t>(b_dim));
    for (int out = 0; out < b_dim; ++out) {
      // outcome bits follow the same ordering as tensor(): factor 0 major
      StateVector v = factors[0].measurement(idx[0]).outcome((out >> (factors.size() - 1)) & 1);
      for (std::size_t k = 1; k < factors.size(); ++k) {
        const int bit = (out >> (factors.size() - 1 - k)) & 1;
        v = tensor(v, factors[k].measurement(idx[k]).outcome(bit));
      }
      basis.push_back(std::move(v));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      w *= factors[k].weight(idx[k]);
      ph += factors[k].phase(idx[k]);
    }
    measurements.emplace_back(std::move(basis));
    weights.push_back(w);
    phases.push_back(ph);
  }
  // product weights of degenerate factors can drift below the set tolerance
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;

  MeasurementSet set(std::move(measurements), std::move(weights), std::move(phases));

  StateVector probe = solved[0].probe;
  for (std::size_t k = 1; k < solved.size(); ++k) probe = tensor(probe, solved[k].probe);

  const PostSelectedEnsemble e = post_selected_ensemble(probe, set);
  ProjectiveMeasurement basis = bob_basis(e, kOrthTol);
  return ProductConstruction{std::move(set), std::move(probe), std::move(basis)};
}

MeasurementSet random_measurement_set(int dim, int count, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("random_measurement_set: dimension must be >= 2");
  if (count < 1) throw std::invalid_argument("random_measurement_set: count must be >= 1");
  Prng prng(seed);
  std::vector<ProjectiveMeasurement> measurements;
  measurements.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<StateVector> basis;
    while (static_cast<int>(basis.size()) < dim) {
      std::vector<Complex> col(static_cast<std::size_t>(dim));
      for (Complex& z : col) z = Complex(prng.gaussian(), prng.gaussian());
      std::vector<StateVector> trial = basis;
      trial.push_back(StateVector::raw(std::move(col)));
      std::vector<StateVector> on = orthonormalize(trial, 1e-6);
      if (static_cast<int>(on.size()) == static_cast<int>(basis.size()) + 1) {
        basis = std::move(on);
      }
      // a dependent Gaussian draw is measure zero; just redraw
    }
    // pin the representative phases: first nonzero entry real positive
    std::vector<StateVector> fixed;
    fixed.reserve(static_cast<std::size_t>(dim));
    for (const StateVector& v : basis) {
      std::vector<Complex> amps = v.amps();
      for (const Complex& z : amps) {
        if (std::abs(z) > kNormTol) {
          const Complex g = std::conj(z) / std::abs(z);
          for (Complex& y : amps) y *= g;
          break;
        }
      }
      fixed.push_back(StateVector::normalized(std::move(amps)));
    }
    measurements.emplace_back(std::move(fixed));
  }
  return MeasurementSet::uniform(std::move(measurements));
}

}  // namespace qg
