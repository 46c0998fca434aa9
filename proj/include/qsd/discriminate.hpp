#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsd/ball.hpp"
#include "qsd/bloch.hpp"
#include "qsd/errors.hpp"

namespace qsd {

// Complementary state sigma_x of the dual decomposition
// K = q_x rho_x + r_x sigma_x, stored in Bloch form (r_x, u_x).
struct ComplementaryState {
  double r = 0.0;     // slack weight, r_x = k0 - q_x >= 0
  BlochVector u;      // Bloch vector of sigma_x (unit when sigma_x is pure)
  bool pure = false;        // sigma_x is rank one
  bool degenerate = false;  // r_x == 0: the constraint dominates outright
};

// Residuals of the optimality conditions; every entry is a nonnegative
// violation measure that vanishes at an exact optimum.
struct KktResiduals {
  double feasibility = 0.0;   // max over x of the negative part of K - q_x rho_x
  double stationarity = 0.0;  // spread of the reconstructed dual operator
  double slackness = 0.0;     // max |r_x tr(sigma_x M_x)|
  double duality_gap = 0.0;   // |tr K - sum_x q_x tr(rho_x M_x)|

  double max() const;
  bool pass(double tol) const;
};

// Dual optimum in Bloch form: K = (k0 I + k . sigma)/2 plus the per-state
// decomposition evidence.
struct DualCertificate {
  double k0 = 0.0;
  BlochVector k;
  std::vector<ComplementaryState> complementary;  // one per input state
  KktResiduals residuals;
};

struct SolveDiagnostics {
  std::string solver_path;
  long iterations = 0;
  std::size_t dropped_zero_priors = 0;
};

// Full output of the discriminator. The POVM and the complementary list are
// indexed like the input ensemble (zero-prior states get zero elements);
// `support` holds the indices whose dual constraint is tight at the optimum.
struct Solution {
  double p_guess = 0.0;
  DualCertificate certificate;
  Povm povm{Povm::unchecked({})};
  std::vector<std::size_t> support;
  SolveDiagnostics diagnostics;
};

struct SolveOptions {
  Tolerances tol;
  std::uint64_t seed = 0xB10C4B411ULL;
  std::size_t exact_enumeration_limit = 12;
  long max_iterations = 1'000'000;

  BallOptions ball_options() const;
};

// Computes the guessing probability, an optimal measurement, and the dual
// certificate for an arbitrary ensemble.
Solution solve(const Ensemble& ensemble, const SolveOptions& options = {});

// Decomposes the dual operator at (k0, k) into complementary states for each
// ensemble member. Requires k0 >= q_x - tol_active for all x.
std::vector<ComplementaryState> complementary_states(double k0, const BlochVector& k,
                                                     const Ensemble& ensemble,
                                                     double tol_active);

// Assembles the optimal POVM from support weights and complementary states.
// `weights` has one entry per ensemble member (zero off the support).
Povm optimal_povm(const std::vector<ComplementaryState>& complementary,
                  const std::vector<double>& weights, double tol_povm);

// Checks a full solution against the optimality conditions of the ensemble.
// Never throws on a bad certificate; the residuals carry the verdict.
KktResiduals kkt_verify(const Ensemble& ensemble, const Solution& solution,
                        const Tolerances& tol = {});

// Success probability of an explicit measurement on the ensemble. The POVM
// must have one element per state.
double primal_value(const Ensemble& ensemble, const Povm& povm);

// Outcome of comparing two equal-prior ensembles that share a state count:
// equal ensembles (up to global rotation) must produce the same value.
struct EquivalenceReport {
  bool equal = false;
  double radius_a = 0.0;
  double radius_b = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
};

EquivalenceReport equivalence_class_check(const Ensemble& a, const Ensemble& b,
                                          const SolveOptions& options = {});

// Closed-form two-state optimum, used as an independent cross-check.
double helstrom(const Ensemble& ensemble);

}  // namespace qsd
