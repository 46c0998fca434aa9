#pragma once

#include <string>

#include "qsd/discriminate.hpp"
#include "qsd/oracles.hpp"
#include "qsd/scenario.hpp"

namespace qsd {

// Independent cross-checks bundled for the report. Both search oracles
// return upper bounds on the optimum, so agreement is one-sided plus a
// resolution term.
struct OracleSection {
  double grid_step = 1e-2;
  double grid_value = 0.0;
  bool grid_pass = false;
  long subgradient_iterations = 1'000'000;
  double subgradient_value = 0.0;
  bool subgradient_pass = false;
  MatrixCheckResult matrix;
  bool matrix_pass = false;

  bool pass() const { return grid_pass && subgradient_pass && matrix_pass; }
};

OracleSection run_oracles(const Ensemble& ensemble, const Solution& solution,
                          const SolveOptions& options, double grid_step = 1e-2,
                          long subgradient_iterations = 1'000'000);

// Renders the report document: value, certificate, measurement, residuals,
// optional oracle section, and provenance. `input_text` is hashed for the
// provenance block. Deterministic for identical inputs.
std::string render_report(const Scenario& scenario, const Ensemble& ensemble,
                          const Solution& solution, const SolveOptions& options,
                          const std::string& input_text,
                          const OracleSection* oracles);

// Standalone measurement export.
std::string render_povm(const Solution& solution);

// Delimited plot data: prior-scaled state vectors, complementary state
// directions, ball center, and ball radius, one record per row.
std::string render_plot_data(const Ensemble& ensemble, const Solution& solution);

}  // namespace qsd
