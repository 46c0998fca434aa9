#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsd/bloch.hpp"

namespace qsd {

// Weighted point set for the minimax problem
//   minimize over k:  max_x ( offset_x + norm(k - p_x) ).
// Offsets are nonnegative; an all-zero offset vector is the plain
// minimum-enclosing-ball problem and value == radius.
struct PointSet {
  std::vector<BlochVector> points;
  std::vector<double> offsets;

  PointSet(std::vector<BlochVector> pts, std::vector<double> offs);
  static PointSet unweighted(std::vector<BlochVector> pts);

  std::size_t size() const { return points.size(); }
};

struct BallDiagnostics {
  std::string path;      // which solver produced the result
  long iterations = 0;   // recursion steps / candidate count / subgradient steps
};

// Minimizer of the offset objective together with its optimality
// certificate: the active ("support") indices and convex weights on their
// outward unit directions u_x = (center - p_x)/norm(center - p_x) that sum
// to zero. `value` is always the objective evaluated at `center`.
struct BallSolution {
  BlochVector center;
  double value = 0.0;
  std::vector<std::size_t> support;          // indices into the point set
  std::vector<double> support_weights;       // parallel to `support`
  BallDiagnostics diagnostics;
};

struct BallOptions {
  double tol_active = Tolerances{}.active;
  double tol_stationary = Tolerances{}.stationary;
  std::uint64_t seed = 0xB10C4B411ULL;       // recursion shuffle; fixed by default
  std::size_t exact_enumeration_limit = 12;  // active-set enumeration up to this N
  long max_iterations = 1'000'000;           // subgradient budget beyond the limit
};

// Smallest ball containing all points (Welzl-style move-to-front recursion,
// boundary sets of at most four points solved in closed form).
BallSolution min_enclosing_ball(const std::vector<BlochVector>& points,
                                const BallOptions& options = {});

// Exact minimizer of max_x (offset_x + norm(k - p_x)). Small instances are
// solved by enumerating candidate active sets of size <= 4; larger ones by
// a subgradient descent that localizes the active set, followed by the same
// closed-form active-set solve. Every returned solution is certified
// against all constraints.
BallSolution offset_minimax(const PointSet& ps, const BallOptions& options = {});

// Convex weights lambda >= 0, sum lambda = 1, supported on the active set of
// (center, value), with sum lambda_x u_x = 0. Returned vector has one entry
// per point (zero off the support). Ties between equally valid weightings
// resolve to the minimum-Euclidean-norm vector. Throws InfeasibleWeights if
// no such combination exists, i.e. (center, value) is not optimal.
std::vector<double> support_weights(const BlochVector& center, double value,
                                    const PointSet& ps,
                                    const BallOptions& options = {});

}  // namespace qsd
