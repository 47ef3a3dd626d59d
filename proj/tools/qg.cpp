// Command-line front end for the coherent measurement-choice guessing game:
// closed-form qubit probes, Monte-Carlo verification, probe optimization in
// higher dimensions, basis generation and parameter scans.
//
// Exit codes: 0 success, 1 usage or spec error, 2 mathematical failure
// (e.g. no probe reaches the orthogonality tolerance).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qguess/explorer.hpp"
#include "qguess/game.hpp"
#include "qguess/measurements.hpp"
#include "qguess/qubit_solver.hpp"
#include "qguess/spec_io.hpp"

namespace {

std::string format_complex(const qg::Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gj", z.real(), z.imag());
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_basis(const qg::ProjectiveMeasurement& basis) {
  for (const qg::StateVector& v : basis.basis()) {
    std::string line;
    for (const qg::Complex& z : v.amps()) {
      if (!line.empty()) line += ' ';
      line += format_complex(z);
    }
    std::printf("%s\n", line.c_str());
  }
}

double exact_rate(const qg::PostSelectedEnsemble& e, const qg::ProjectiveMeasurement& basis) {
  double rate = 0.0;
  for (int a = 0; a < e.alice_outcomes(); ++a) {
    const double n = e.branch(a).norm();
    if (n <= 0.0 || a >= basis.dim()) continue;
    rate += std::norm(qg::inner_product(basis.outcome(a), e.branch(a)));
  }
  return rate;
}

struct CsvSink {
  std::FILE* f = nullptr;
  bool owned = false;

  explicit CsvSink(const std::string& path, const char* header) {
    if (path.empty()) {
      f = stdout;
      std::fprintf(f, "%s\n", header);
      return;
    }
    const bool fresh =
        !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    f = std::fopen(path.c_str(), "a");
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
    owned = true;
    if (fresh) std::fprintf(f, "%s\n", header);
  }
  ~CsvSink() {
    if (owned && f) std::fclose(f);
  }
};

int run_solve(const std::string& path, double tol_override) {
  qg::ExperimentSpec spec = qg::load_spec(path);
  if (spec.set.dim() != 2) {
    std::fprintf(stderr, "solve: the closed form applies to qubit measurement sets only\n");
    return 1;
  }
  const double tol = tol_override > 0 ? tol_override : spec.tol;
  try {
    const qg::QubitSolution sol = qg::solve(spec.set);
    std::printf("a=%.6f b=%.6f phi=%.6f\n", sol.a, sol.b, sol.phi);
    std::printf("residual=%.3e\n", sol.residual);
    if (sol.residual > tol) {
      std::fprintf(stderr, "solve: residual exceeds tolerance %.3e\n", tol);
      return 2;
    }
    std::printf("guess basis:\n");
    print_basis(sol.bob_basis);
    return 0;
  } catch (const qg::solve_error& e) {
    std::fprintf(stderr, "solve: %s\n", e.what());
    return 2;
  }
}

int run_simulate(const std::string& path, long rounds_flag, std::uint64_t seed_flag,
                 bool seed_given) {
  qg::ExperimentSpec spec = qg::load_spec(path);
  const long rounds = rounds_flag >= 0 ? rounds_flag : spec.rounds;
  const std::uint64_t seed = seed_given ? seed_flag : spec.seed;
  if (rounds < 1) {
    std::fprintf(stderr, "simulate: need at least one round\n");
    return 1;
  }

  qg::StateVector probe = [&] {
    if (spec.probe.has_value()) return *spec.probe;
    if (spec.set.dim() != 2) {
      throw std::invalid_argument(
          "simulate: spec has no probe and the closed form needs a qubit set");
    }
    return qg::solve(spec.set).probe;
  }();
  qg::ProjectiveMeasurement basis = [&] {
    if (spec.guess_basis.has_value()) return *spec.guess_basis;
    if (spec.set.dim() != 2) {
      throw std::invalid_argument(
          "simulate: spec has no guess_basis and the closed form needs a qubit set");
    }
    return qg::solve(spec.set).bob_basis;
  }();

  const qg::GameInstance g(probe, spec.set);
  const double emp = qg::simulate_rounds(g, basis, rounds, seed);
  const double exact = exact_rate(qg::post_selected_ensemble(g), basis);
  const double sigma =
      std::sqrt(std::max(exact * (1.0 - exact), 0.0) / static_cast<double>(rounds));
  std::printf("empirical_rate=%.6f\n", emp);
  std::printf("exact_rate=%.6f\n", exact);
  std::printf("binomial_sigma=%.3e\n", sigma);
  return 0;
}

int run_optimize(const std::string& path, int restarts_flag, int iters,
                 std::uint64_t seed_flag, bool seed_given, const std::string& out) {
  const std::string text = read_file(path);
  qg::ExperimentSpec spec = qg::parse_spec(text);
  const int restarts = restarts_flag > 0 ? restarts_flag : spec.restarts;
  const std::uint64_t seed = seed_given ? seed_flag : spec.seed;

  const qg::OptimizationResult res =
      qg::maximize_success(spec.set, restarts, iters, seed);
  std::printf("best_success=%.12g\n", res.best_success);
  std::printf("best_residual=%.12g\n", res.best_residual);
  std::printf("min_residual_seen=%.12g\n", res.min_residual_seen);
  std::printf("restarts=%d\n", res.restarts_used);

  if (!out.empty()) {
    CsvSink csv(out, "spec_hash,B,A,best_success,best_residual,seed");
    std::fprintf(csv.f, "%s,%d,%d,%.12g,%.12g,%llu\n", qg::spec_hash(text).c_str(),
                 spec.set.dim(), spec.set.count(), res.best_success, res.best_residual,
                 static_cast<unsigned long long>(seed));
  }
  return 0;
}

int run_mub(int d, int k) {
  if (!qg::is_prime(d)) {
    std::fprintf(stderr, "mub: dimension must be prime\n");
    return 1;
  }
  const int lo = k >= 0 ? k : 0;
  const int hi = k >= 0 ? k + 1 : d;
  for (int kk = lo; kk < hi; ++kk) {
    const qg::UnitaryMatrix u = qg::mub_unitary(d, kk);
    std::printf("k=%d\n", kk);
    for (int r = 0; r < d; ++r) {
      std::string line;
      for (int c = 0; c < d; ++c) {
        if (!line.empty()) line += ' ';
        line += format_complex(u(r, c));
      }
      std::printf("%s\n", line.c_str());
    }
  }
  return 0;
}

int run_scan(const std::string& path, const std::string& param, double from, double to,
             int steps, int restarts_flag, int iters, std::uint64_t seed_flag,
             bool seed_given, const std::string& out) {
  qg::ExperimentSpec spec = qg::load_spec(path);
  const int restarts = restarts_flag > 0 ? restarts_flag : spec.restarts;
  const std::uint64_t seed = seed_given ? seed_flag : spec.seed;
  if (steps < 1) {
    std::fprintf(stderr, "scan: empty range\n");
    return 1;
  }

  CsvSink csv(out, "param,best_success,residual");
  for (int s = 0; s < steps; ++s) {
    const double value = steps == 1 ? from : from + (to - from) * s / (steps - 1);
    double success = 0.0;
    double residual = 0.0;
    if (param == "w0") {
      std::vector<double> w = spec.set.weights();
      double rest = 0.0;
      for (std::size_t i = 1; i < w.size(); ++i) rest += w[i];
      if (w.size() < 2 || rest <= 0.0) {
        std::fprintf(stderr, "scan: w0 sweep needs at least two weighted measurements\n");
        return 1;
      }
      if (value < 0.0 || value > 1.0) {
        std::fprintf(stderr, "scan: w0 must stay in [0, 1]\n");
        return 1;
      }
      const double scale = (1.0 - value) / rest;
      w[0] = value;
      for (std::size_t i = 1; i < w.size(); ++i) w[i] *= scale;
      const qg::MeasurementSet swept(spec.set.measurements(), w, spec.set.phases());
      const qg::OptimizationResult res = qg::maximize_success(swept, restarts, iters, seed);
      success = res.best_success;
      residual = res.best_residual;
    } else if (param == "seed") {
      const qg::MeasurementSet random = qg::random_measurement_set(
          spec.set.dim(), spec.set.count(), static_cast<std::uint64_t>(value));
      const qg::OptimizationResult res = qg::maximize_success(random, restarts, iters, seed);
      success = res.best_success;
      residual = res.best_residual;
    } else {
      std::fprintf(stderr, "scan: unknown sweep parameter '%s' (use w0 or seed)\n",
                   param.c_str());
      return 1;
    }
    std::fprintf(csv.f, "%.12g,%.12g,%.12g\n", value, success, residual);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent measurement-choice guessing game toolkit"};
  app.require_subcommand(1);

  std::string spec_path, out_path, scan_param;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int restarts = 0, iters = 2000, mub_d = 3, mub_k = -1, steps = 0;
  long rounds = -1;
  double tol = 0.0, from = 0.0, to = 0.0;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
      seed_given = true;
    });
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "closed-form qubit probe");
  solve_cmd->add_option("--spec", spec_path, "experiment spec file")->required();
  solve_cmd->add_option("--tol", tol, "orthogonality tolerance");

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo round simulation");
  sim_cmd->add_option("--spec", spec_path, "experiment spec file")->required();
  sim_cmd->add_option("--rounds", rounds, "number of rounds");
  add_seed(sim_cmd);

  CLI::App* opt_cmd = app.add_subcommand("optimize", "multi-start probe optimization");
  opt_cmd->add_option("--spec", spec_path, "experiment spec file")->required();
  opt_cmd->add_option("--restarts", restarts, "optimizer restarts");
  opt_cmd->add_option("--iters", iters, "iterations per restart");
  opt_cmd->add_option("--out", out_path, "CSV output path (appended)");
  add_seed(opt_cmd);

  CLI::App* mub_cmd = app.add_subcommand("mub", "print the mutually unbiased basis matrices");
  mub_cmd->add_option("--d", mub_d, "prime dimension")->required();
  mub_cmd->add_option("--k", mub_k, "basis index (all if omitted)");

  CLI::App* scan_cmd = app.add_subcommand("scan", "sweep a parameter, one CSV row per point");
  scan_cmd->add_option("--spec", spec_path, "experiment spec template")->required();
  scan_cmd->add_option("--param", scan_param, "sweep parameter: w0 or seed")->required();
  scan_cmd->add_option("--from", from, "range start")->required();
  scan_cmd->add_option("--to", to, "range end")->required();
  scan_cmd->add_option("--steps", steps, "number of points")->required();
  scan_cmd->add_option("--restarts", restarts, "optimizer restarts");
  scan_cmd->add_option("--iters", iters, "iterations per restart");
  scan_cmd->add_option("--out", out_path, "CSV output path (appended)");
  add_seed(scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(spec_path, tol);
    if (sim_cmd->parsed()) return run_simulate(spec_path, rounds, seed, seed_given);
    if (opt_cmd->parsed())
      return run_optimize(spec_path, restarts, iters, seed, seed_given, out_path);
    if (mub_cmd->parsed()) return run_mub(mub_d, mub_k);
    if (scan_cmd->parsed())
      return run_scan(spec_path, scan_param, from, to, steps, restarts, iters, seed,
                      seed_given, out_path);
  } catch (const qg::solve_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
