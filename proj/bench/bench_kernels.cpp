// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations. The two variants share the shard decomposition and
// sub-seeding, so their results must match exactly; this also re-checks that.

#include <cstdio>
#include <omp.h>

#include "qguess/explorer.hpp"
#include "qguess/game.hpp"
#include "qguess/measurements.hpp"
#include "qguess/qubit_solver.hpp"

namespace {

struct Timing {
  double serial_ms;
  double parallel_ms;
  bool match;
};

void report(const char* name, const Timing& t) {
  std::printf("%-24s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   results %s\n",
              name, t.serial_ms, t.parallel_ms, t.serial_ms / t.parallel_ms,
              t.match ? "match" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());

  // Monte-Carlo rounds on the solved two-basis qubit instance
  {
    const qg::MeasurementSet set = qg::MeasurementSet::uniform(
        {qg::qubit_measurement({1.0, 0.0, 0.0}),
         qg::qubit_measurement({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0})});
    const qg::QubitSolution sol = qg::solve(set);
    const qg::GameInstance g(sol.probe, set);
    const long rounds = 4'000'000;

    double t0 = omp_get_wtime();
    const double serial = qg::simulate_rounds_serial(g, sol.bob_basis, rounds, 7);
    double t1 = omp_get_wtime();
    const double parallel = qg::simulate_rounds(g, sol.bob_basis, rounds, 7);
    double t2 = omp_get_wtime();
    report("simulate_rounds", {1e3 * (t1 - t0), 1e3 * (t2 - t1), serial == parallel});
  }

  // Random-probe residual sweep on the uniform three-basis qutrit instance
  {
    const qg::MeasurementSet set = qg::mub_set(3, 3);
    const long samples = 400'000;

    double t0 = omp_get_wtime();
    const qg::SweepResult serial = qg::random_probe_sweep_serial(set, samples, 11);
    double t1 = omp_get_wtime();
    const qg::SweepResult parallel = qg::random_probe_sweep(set, samples, 11);
    double t2 = omp_get_wtime();
    report("random_probe_sweep",
           {1e3 * (t1 - t0), 1e3 * (t2 - t1), serial.min_residual == parallel.min_residual});
  }

  // Multi-start success maximization on the same qutrit instance
  {
    const qg::MeasurementSet set = qg::mub_set(3, 3);
    const int restarts = 32;
    const int iters = 1500;

    double t0 = omp_get_wtime();
    const qg::OptimizationResult serial = qg::maximize_success_serial(set, restarts, iters, 3);
    double t1 = omp_get_wtime();
    const qg::OptimizationResult parallel = qg::maximize_success(set, restarts, iters, 3);
    double t2 = omp_get_wtime();
    report("maximize_success",
           {1e3 * (t1 - t0), 1e3 * (t2 - t1),
            serial.best_success == parallel.best_success &&
                serial.best_residual == parallel.best_residual});
  }

  return 0;
}
