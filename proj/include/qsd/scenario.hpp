#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsd/bloch.hpp"
#include "qsd/errors.hpp"

namespace qsd {

// Per-scenario tolerance overrides; unset fields fall back to the defaults.
struct ToleranceOverrides {
  std::optional<double> state;
  std::optional<double> prior;
  std::optional<double> povm;
  std::optional<double> active;
  std::optional<double> stationary;
  std::optional<double> cert;

  bool any() const;
  Tolerances resolve(const Tolerances& base = {}) const;
};

// A problem instance as read from disk: states in Bloch form (spherical
// input is converted at parse time), priors either explicit or the literal
// "equal" keyword, plus optional tolerance overrides.
struct Scenario {
  std::string name;
  std::vector<BlochVector> states;
  bool equal_priors = false;
  std::vector<double> priors;  // empty when equal_priors is set
  ToleranceOverrides tolerances;

  Ensemble to_ensemble() const;
};

// Parses a scenario document. Malformed text raises ParseError naming the
// position; semantic violations (mixed encodings, bad priors, unknown
// fields) raise ValidationError naming the field.
Scenario parse_scenario(const std::string& text);

// Serializes in Bloch form with 17 significant digits; parsing the result
// reproduces the scenario exactly.
std::string serialize_scenario(const Scenario& scenario);

enum class GeneratorKind { Pair, Halfplane, Polyhedron, Random, Fig1a };

// Maps a kind name ("pair", "halfplane", "polyhedron", "random", "fig1a")
// to the enum; throws UnknownKind otherwise.
GeneratorKind parse_kind(const std::string& name);

// Builds one of the example families; `params` is the flat numeric parameter
// list of the kind:
//   pair: angle, purity1, purity2 [, prior1, prior2]   (default equal priors)
//   halfplane: N, f_1 ... f_N  (or a single f for all states)
//   polyhedron: N in {4, 6, 8, 12, 20}
//   random: N, seed, mixed(0 or 1)
//   fig1a: [f]   (default 0.9)
// Deterministic for fixed parameters; throws BadParams on invalid input.
Scenario generate(GeneratorKind kind, const std::vector<double>& params);

}  // namespace qsd
