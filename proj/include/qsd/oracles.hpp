#pragma once

#include <cstdint>

#include "qsd/bloch.hpp"
#include "qsd/discriminate.hpp"
#include "qsd/errors.hpp"

namespace qsd {

// Brute-force dual bound: evaluates max_x (q_x + norm(k - q_x v_x)) on a
// uniform grid over [-1, 1]^3 intersected with the unit ball and returns the
// grid minimum. Always an upper bound on the optimum, and within one grid
// step of it by Lipschitz continuity. `step` must lie in (0, 0.5].
double grid_dual(const Ensemble& ensemble, double step);

// Projected subgradient descent on the same objective with deterministic
// seeding; returns the best objective value seen, again an upper bound on
// the optimum.
double subgradient_dual(const Ensemble& ensemble, long iterations,
                        std::uint64_t seed);

// Residuals from replaying a solution with dense 2x2 complex matrices:
// explicit density matrices, POVM elements, and the dual operator, sharing
// no geometry with the solver.
struct MatrixCheckResult {
  double reconstruction = 0.0;  // max_x opnorm(K - q_x rho_x - r_x sigma_x)
  double slackness = 0.0;       // max_x |r_x tr(sigma_x M_x)|
  double completeness = 0.0;    // opnorm(sum_x M_x - I)
  double positivity = 0.0;      // most negative eigenvalue across M_x and K
  double feasibility = 0.0;     // max_x negative part of min eig(K - q_x rho_x)
  double duality_gap = 0.0;     // |tr K - sum_x q_x tr(rho_x M_x)|

  double max() const;
  bool pass(double tol) const;
};

MatrixCheckResult matrix_check(const Ensemble& ensemble, const Solution& solution);

}  // namespace qsd
