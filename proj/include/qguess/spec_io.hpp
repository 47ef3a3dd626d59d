#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qguess/game.hpp"
#include "qguess/measurements.hpp"

namespace qg {

/// Parsed experiment description. JSON layout:
///
///   {
///     "dimension": 2,
///     "measurements": [
///       {"type": "qubit", "a": 1.0, "b": 0.0, "phi": 0.0},
///       {"type": "mub", "k": 0},
///       {"type": "computational"},
///       {"type": "explicit", "basis": [[[re, im], ...], ...]}   // row per outcome vector
///     ],
///     "weights": [...],        // optional, default uniform
///     "phases": [...],         // optional, default zeros
///     "probe": [[re, im], ...],          // optional
///     "guess_basis": [[[re, im], ...], ...],  // optional, row per vector
///     "seed": 1, "restarts": 100, "rounds": 10000, "tol": 1e-9   // optional defaults
///   }
struct ExperimentSpec {
  MeasurementSet set;
  std::optional<StateVector> probe;
  std::optional<ProjectiveMeasurement> guess_basis;
  std::uint64_t seed = 1;
  int restarts = 100;
  long rounds = 10000;
  double tol = kOrthTol;
};

/// Throws std::invalid_argument on malformed input.
ExperimentSpec parse_spec(const std::string& json_text);
ExperimentSpec load_spec(const std::string& path);

/// Serializes a measurement set as an explicit-basis spec document; parsing
/// it back reproduces the set exactly (doubles round-trip through the text).
std::string serialize_set(const MeasurementSet& set);

/// Stable FNV-1a content hash of a spec document, as 16 hex digits.
std::string spec_hash(const std::string& json_text);

}  // namespace qg
