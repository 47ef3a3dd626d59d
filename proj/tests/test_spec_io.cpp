#include <doctest.h>

#include <cmath>

#include "qguess/spec_io.hpp"
#include "test_helpers.hpp"

using qg::Complex;

TEST_CASE("spec parsing covers the measurement constructors") {
  const std::string text = R"({
    "dimension": 2,
    "measurements": [
      {"type": "qubit", "a": 1.0, "b": 0.0, "phi": 0.0},
      {"type": "mub", "k": 0},
      {"type": "computational"}
    ],
    "weights": [0.5, 0.25, 0.25],
    "phases": [0.0, 1.0, 2.0],
    "probe": [[0.6, 0.0], [0.0, 0.8]],
    "seed": 42,
    "restarts": 7,
    "rounds": 123,
    "tol": 1e-7
  })";
  const qg::ExperimentSpec spec = qg::parse_spec(text);
  CHECK(spec.set.dim() == 2);
  CHECK(spec.set.count() == 3);
  CHECK(spec.set.weight(0) == 0.5);
  CHECK(spec.set.phase(2) == 2.0);
  REQUIRE(spec.probe.has_value());
  CHECK(std::abs((*spec.probe)[1] - Complex(0.0, 0.8)) <= 1e-15);
  CHECK(spec.seed == 42);
  CHECK(spec.restarts == 7);
  CHECK(spec.rounds == 123);
  CHECK(spec.tol == 1e-7);

  // defaults: uniform weights, zero phases
  const qg::ExperimentSpec bare = qg::parse_spec(R"({
    "dimension": 3,
    "measurements": [{"type": "mub", "k": 0}, {"type": "mub", "k": 1}]
  })");
  CHECK(bare.set.weight(0) == 0.5);
  CHECK(bare.set.phase(1) == 0.0);
  CHECK_FALSE(bare.probe.has_value());
  CHECK(bare.rounds == 10000);
}

TEST_CASE("spec parsing rejects malformed documents") {
  CHECK_THROWS_AS(qg::parse_spec("not json"), std::invalid_argument);
  CHECK_THROWS_AS(qg::parse_spec(R"({"dimension": 2, "measurements": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(qg::parse_spec(R"({"dimension": 2,
    "measurements": [{"type": "warp"}]})"),
                  std::invalid_argument);
  // weights that do not sum to one fail the set validation
  CHECK_THROWS_AS(qg::parse_spec(R"({"dimension": 2,
    "measurements": [{"type": "computational"}], "weights": [0.5]})"),
                  std::invalid_argument);
  // explicit basis with a non-orthonormal row
  CHECK_THROWS_AS(qg::parse_spec(R"({"dimension": 2,
    "measurements": [{"type": "explicit",
      "basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}]})"),
                  std::invalid_argument);
}

TEST_CASE("serialized sets parse back exactly") {
  qg::Prng prng(107);
  for (int t = 0; t < 10; ++t) {
    const auto [set, params] = qgtest::random_qubit_set(prng, 2 + t % 4, true, true);
    const std::string text = qg::serialize_set(set);
    const qg::ExperimentSpec spec = qg::parse_spec(text);
    REQUIRE(spec.set.count() == set.count());
    for (int i = 0; i < set.count(); ++i) {
      CHECK(std::abs(spec.set.weight(i) - set.weight(i)) <= 1e-12);
      CHECK(std::abs(spec.set.phase(i) - set.phase(i)) <= 1e-12);
      for (int j = 0; j < set.dim(); ++j) {
        for (int k = 0; k < set.dim(); ++k) {
          CHECK(std::abs(spec.set.measurement(i).outcome(j)[k] -
                         set.measurement(i).outcome(j)[k]) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("spec hash is stable under formatting and sensitive to content") {
  const std::string a = R"({"dimension": 2, "measurements": [{"type": "computational"}]})";
  const std::string b = R"({
    "dimension": 2,
    "measurements": [ {"type": "computational"} ]
  })";
  const std::string c = R"({"dimension": 3, "measurements": [{"type": "computational"}]})";
  CHECK(qg::spec_hash(a) == qg::spec_hash(b));
  CHECK(qg::spec_hash(a) != qg::spec_hash(c));
  CHECK(qg::spec_hash(a).size() == 16);
}
