#include "qguess/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qg {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("spec: complex entries are [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

StateVector parse_vector(const json& j, int dim, bool normalized) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw std::invalid_argument("spec: vector length does not match dimension");
  }
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const json& e : j) amps.push_back(parse_complex(e));
  return normalized ? StateVector::normalized(std::move(amps))
                    : StateVector::raw(std::move(amps));
}

ProjectiveMeasurement parse_basis(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw std::invalid_argument("spec: basis needs one row per outcome vector");
  }
  std::vector<StateVector> basis;
  basis.reserve(j.size());
  for (const json& row : j) basis.push_back(parse_vector(row, dim, true));
  return ProjectiveMeasurement(std::move(basis));
}

ProjectiveMeasurement parse_measurement(const json& j, int dim) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "qubit") {
    if (dim != 2) throw std::invalid_argument("spec: qubit measurement in non-qubit spec");
    return qubit_measurement(QubitMeasurementParams(
        j.at("a").get<double>(), j.at("b").get<double>(), j.at("phi").get<double>()));
  }
  if (type == "mub") {
    return ProjectiveMeasurement([&] {
      std::vector<StateVector> basis;
      const int k = j.at("k").get<int>();
      for (int i = 0; i < dim; ++i) basis.push_back(mub_vector(dim, k, i));
      return basis;
    }());
  }
  if (type == "computational") return computational_basis(dim);
  if (type == "explicit") return parse_basis(j.at("basis"), dim);
  throw std::invalid_argument("spec: unknown measurement type '" + type + "'");
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ExperimentSpec parse_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
  }
  const int dim = j.at("dimension").get<int>();
  if (dim < 1) throw std::invalid_argument("spec: dimension must be positive");

  const json& ms = j.at("measurements");
  if (!ms.is_array() || ms.empty()) {
    throw std::invalid_argument("spec: measurements must be a non-empty list");
  }
  std::vector<ProjectiveMeasurement> measurements;
  measurements.reserve(ms.size());
  for (const json& m : ms) measurements.push_back(parse_measurement(m, dim));

  const std::size_t count = measurements.size();
  std::vector<double> weights(count, 1.0 / static_cast<double>(count));
  std::vector<double> phases(count, 0.0);
  if (j.contains("weights")) {
    weights = j.at("weights").get<std::vector<double>>();
  }
  if (j.contains("phases")) {
    phases = j.at("phases").get<std::vector<double>>();
  }

  ExperimentSpec spec{
      MeasurementSet(std::move(measurements), std::move(weights), std::move(phases)),
      std::nullopt,
      std::nullopt};
  if (j.contains("probe")) spec.probe = parse_vector(j.at("probe"), dim, true);
  if (j.contains("guess_basis")) {
    const json& gb = j.at("guess_basis");
    const int a_dim = spec.set.count();
    if (!gb.is_array() || static_cast<int>(gb.size()) != a_dim) {
      throw std::invalid_argument("spec: guess_basis needs one row per control dimension");
    }
    std::vector<StateVector> basis;
    basis.reserve(gb.size());
    for (const json& row : gb) basis.push_back(parse_vector(row, a_dim, true));
    spec.guess_basis = ProjectiveMeasurement(std::move(basis));
  }
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("restarts")) spec.restarts = j.at("restarts").get<int>();
  if (j.contains("rounds")) spec.rounds = j.at("rounds").get<long>();
  if (j.contains("tol")) spec.tol = j.at("tol").get<double>();
  return spec;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("spec: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string serialize_set(const MeasurementSet& set) {
  json j;
  j["dimension"] = set.dim();
  json ms = json::array();
  for (const ProjectiveMeasurement& m : set.measurements()) {
    json basis = json::array();
    for (const StateVector& v : m.basis()) {
      json row = json::array();
      for (const Complex& z : v.amps()) row.push_back(complex_to_json(z));
      basis.push_back(std::move(row));
    }
    ms.push_back(json{{"type", "explicit"}, {"basis", std::move(basis)}});
  }
  j["measurements"] = std::move(ms);
  j["weights"] = set.weights();
  j["phases"] = set.phases();
  return j.dump(2);
}

std::string spec_hash(const std::string& json_text) {
  // FNV-1a over the canonical re-serialized document
  const std::string canon = json::parse(json_text).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace qg
