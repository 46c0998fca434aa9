#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qsd/scenario.hpp"

using qsd::GeneratorKind;
using qsd::Scenario;

namespace {

bool same_states(const Scenario& a, const Scenario& b) {
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    if (a.states[i].x != b.states[i].x || a.states[i].y != b.states[i].y ||
        a.states[i].z != b.states[i].z) {
      return false;
    }
  }
  return true;
}

}  // namespace

// ---------- parsing ----------

TEST_CASE("parses a bloch-form scenario") {
  const Scenario s = qsd::parse_scenario(R"({
    "name": "demo",
    "states": [{"bloch": [0, 0, 1]}, {"bloch": [0.5, 0, -0.25]}],
    "priors": [0.25, 0.75]
  })");
  CHECK(s.name == "demo");
  REQUIRE(s.states.size() == 2);
  CHECK(s.states[1].x == 0.5);
  CHECK(s.states[1].z == -0.25);
  CHECK_FALSE(s.equal_priors);
  REQUIRE(s.priors.size() == 2);
  CHECK(s.priors[0] == 0.25);

  const qsd::Ensemble e = s.to_ensemble();
  CHECK(e.size() == 2);
  CHECK_FALSE(e.has_equal_priors());
}

TEST_CASE("parses spherical coordinates") {
  const Scenario s = qsd::parse_scenario(R"({
    "states": [{"theta": 1.5707963267948966, "phi": 0.0, "purity": 0.5}],
    "priors": "equal"
  })");
  REQUIRE(s.states.size() == 1);
  CHECK(s.states[0].x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(s.states[0].y) < 1e-16);
  CHECK(std::abs(s.states[0].z) < 1e-16);
  CHECK(s.equal_priors);
}

TEST_CASE("rejects malformed and invalid documents") {
  // Broken JSON carries the parser's position report.
  try {
    qsd::parse_scenario("{ not json ");
    FAIL("expected ParseError");
  } catch (const qsd::ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }

  // Mixing encodings across states.
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}, {"theta": 0, "phi": 0, "purity": 1}],
    "priors": "equal"
  })"),
                  qsd::ValidationError);

  // Unknown fields at every level.
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}], "priors": "equal", "extra": 1
  })"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1], "label": "up"}], "priors": "equal"
  })"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}], "priors": "equal",
    "tolerances": {"fuzz": 1e-9}
  })"),
                  qsd::ValidationError);

  // Structural mistakes.
  CHECK_THROWS_AS(qsd::parse_scenario("[1, 2, 3]"), qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({"priors": "equal"})"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({"states": [], "priors": "equal"})"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(
      qsd::parse_scenario(R"({"states": [{"bloch": [0,0]}], "priors": "equal"})"),
      qsd::ValidationError);
  CHECK_THROWS_AS(
      qsd::parse_scenario(R"({"states": [{"theta": 1, "phi": 0}], "priors": "equal"})"),
      qsd::ValidationError);
  CHECK_THROWS_AS(
      qsd::parse_scenario(R"({"states": [{"bloch": [0,0,1]}]})"),
      qsd::ValidationError);
  CHECK_THROWS_AS(
      qsd::parse_scenario(
          R"({"states": [{"bloch": [0,0,1]}], "priors": "uniform"})"),
      qsd::ValidationError);

  // Semantic violations surface at parse time through ensemble validation.
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}, {"bloch": [1,0,0]}],
    "priors": [0.6, 0.5]
  })"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}, {"bloch": [1,0,0]}],
    "priors": [-0.1, 1.1]
  })"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0, 0, 1.5]}], "priors": "equal"
  })"),
                  qsd::ValidationError);
}

TEST_CASE("parses and resolves tolerance overrides") {
  const Scenario s = qsd::parse_scenario(R"({
    "states": [{"bloch": [0, 0, 1]}],
    "priors": "equal",
    "tolerances": {"cert": 1e-6, "active": 1e-7}
  })");
  REQUIRE(s.tolerances.cert.has_value());
  CHECK(*s.tolerances.cert == 1e-6);
  CHECK(s.tolerances.any());

  const qsd::Tolerances t = s.tolerances.resolve();
  CHECK(t.cert == 1e-6);
  CHECK(t.active == 1e-7);
  CHECK(t.state == 1e-12);      // untouched defaults
  CHECK(t.stationary == 1e-10);

  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}], "priors": "equal",
    "tolerances": {"cert": 0}
  })"),
                  qsd::ValidationError);
  CHECK_THROWS_AS(qsd::parse_scenario(R"({
    "states": [{"bloch": [0,0,1]}], "priors": "equal",
    "tolerances": {"cert": -1e-9}
  })"),
                  qsd::ValidationError);

  // A vector with a larger state tolerance is admitted by its own override.
  const Scenario wide = qsd::parse_scenario(R"({
    "states": [{"bloch": [0, 0, 1.0000001]}], "priors": "equal",
    "tolerances": {"state": 1e-3}
  })");
  CHECK(wide.to_ensemble().state(0).purity() == doctest::Approx(1.0));
}

// ---------- serialization ----------

TEST_CASE("serialization round-trips every generator bitwise") {
  const std::vector<std::pair<GeneratorKind, std::vector<double>>> cases{
      {GeneratorKind::Pair, {2.0, 0.9, 0.7}},
      {GeneratorKind::Pair, {1.0, 1.0, 1.0, 0.3, 0.7}},
      {GeneratorKind::Halfplane, {6, 0.8}},
      {GeneratorKind::Polyhedron, {12}},
      {GeneratorKind::Random, {9, 42, 1}},
      {GeneratorKind::Fig1a, {}},
  };
  for (const auto& [kind, params] : cases) {
    const Scenario original = qsd::generate(kind, params);
    const std::string text = qsd::serialize_scenario(original);
    const Scenario reparsed = qsd::parse_scenario(text);
    CHECK(same_states(original, reparsed));
    CHECK(original.equal_priors == reparsed.equal_priors);
    CHECK(original.priors == reparsed.priors);
    CHECK(qsd::serialize_scenario(reparsed) == text);
  }
}

// ---------- generators ----------

TEST_CASE("generator kinds parse by name") {
  CHECK(qsd::parse_kind("pair") == GeneratorKind::Pair);
  CHECK(qsd::parse_kind("halfplane") == GeneratorKind::Halfplane);
  CHECK(qsd::parse_kind("polyhedron") == GeneratorKind::Polyhedron);
  CHECK(qsd::parse_kind("random") == GeneratorKind::Random);
  CHECK(qsd::parse_kind("fig1a") == GeneratorKind::Fig1a);
  CHECK_THROWS_AS(qsd::parse_kind("dodecahedron"), qsd::UnknownKind);
  CHECK_THROWS_AS(qsd::parse_kind(""), qsd::UnknownKind);
}

TEST_CASE("pair generator places states in the xz-plane") {
  const Scenario s = qsd::generate(GeneratorKind::Pair, {3.14159265358979323846,
                                                         1.0, 0.5});
  REQUIRE(s.states.size() == 2);
  CHECK(s.states[0].z == 1.0);
  CHECK(s.states[1].z == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::abs(s.states[1].y) < 1e-16);
  CHECK(s.equal_priors);

  const Scenario biased =
      qsd::generate(GeneratorKind::Pair, {1.0, 1.0, 1.0, 0.2, 0.8});
  CHECK_FALSE(biased.equal_priors);
  CHECK(biased.priors == std::vector<double>{0.2, 0.8});

  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Pair, {1.0, 1.0}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Pair, {1.0, 1.2, 0.5}),
                  qsd::BadParams);
}

TEST_CASE("halfplane generator spaces states around the circle") {
  const Scenario s = qsd::generate(GeneratorKind::Halfplane, {4, 0.8});
  REQUIRE(s.states.size() == 4);
  for (const auto& v : s.states) {
    CHECK(v.z == 0.0);
    CHECK(v.norm() == doctest::Approx(0.8).epsilon(1e-12));
  }
  // x = N lands on angle 2*pi: the positive x-axis.
  CHECK(s.states[3].x == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(s.states[3].y == doctest::Approx(0.0));

  const Scenario each =
      qsd::generate(GeneratorKind::Halfplane, {3, 0.9, 0.5, 0.7});
  CHECK(each.states[0].norm() == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(each.states[1].norm() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Halfplane, {4, 0.8, 0.9}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Halfplane, {1, 0.8}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Halfplane, {}), qsd::BadParams);
}

TEST_CASE("polyhedron generator emits unit vertices") {
  for (long n : {4L, 6L, 8L, 12L, 20L}) {
    const Scenario s =
        qsd::generate(GeneratorKind::Polyhedron, {static_cast<double>(n)});
    CHECK(s.states.size() == static_cast<std::size_t>(n));
    CHECK(s.equal_priors);
    for (const auto& v : s.states) {
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    // Vertex sums vanish for these centrally symmetric solids (and for the
    // tetrahedron by balance).
    qsd::BlochVector sum;
    for (const auto& v : s.states) sum = sum + v;
    CHECK(sum.norm() < 1e-12);
  }
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Polyhedron, {5}), qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Polyhedron, {4, 6}),
                  qsd::BadParams);
}

TEST_CASE("random generator is deterministic and respects flags") {
  const Scenario a = qsd::generate(GeneratorKind::Random, {8, 123, 1});
  const Scenario b = qsd::generate(GeneratorKind::Random, {8, 123, 1});
  CHECK(same_states(a, b));
  CHECK(a.priors == b.priors);
  CHECK(a.states.size() == 8);

  double total = 0.0;
  for (double q : a.priors) {
    CHECK(q > 0.0);
    total += q;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  const Scenario pure = qsd::generate(GeneratorKind::Random, {5, 9, 0});
  for (const auto& v : pure.states) {
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  const Scenario other = qsd::generate(GeneratorKind::Random, {8, 124, 1});
  CHECK_FALSE(same_states(a, other));

  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Random, {8, -1, 1}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Random, {8, 1.5, 1}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Random, {8, 1, 2}),
                  qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Random, {8, 1}), qsd::BadParams);
}

TEST_CASE("fig1a generator shapes the planar six-state family") {
  const Scenario s = qsd::generate(GeneratorKind::Fig1a, {});
  REQUIRE(s.states.size() == 6);
  CHECK(s.equal_priors);
  for (const auto& v : s.states) CHECK(v.z == 0.0);

  // Three states sit at the maximal purity 0.9; the rest are strictly inside.
  const double purities[6] = {s.states[0].norm(), s.states[1].norm(),
                              s.states[2].norm(), s.states[3].norm(),
                              s.states[4].norm(), s.states[5].norm()};
  CHECK(purities[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(purities[2] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(purities[3] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(purities[1] < 0.9 - 1e-3);
  CHECK(purities[4] < 0.9 - 1e-3);
  CHECK(purities[5] < 0.9 - 1e-3);

  const Scenario scaled = qsd::generate(GeneratorKind::Fig1a, {0.5});
  CHECK(scaled.states[0].norm() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Fig1a, {1.5}), qsd::BadParams);
  CHECK_THROWS_AS(qsd::generate(GeneratorKind::Fig1a, {0.5, 0.5}),
                  qsd::BadParams);
}
