#include "qsd/discriminate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace qsd {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string describe(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double KktResiduals::max() const {
  return std::max({feasibility, stationarity, slackness, duality_gap});
}

bool KktResiduals::pass(double tol) const { return max() <= tol; }

BallOptions SolveOptions::ball_options() const {
  BallOptions b;
  b.tol_active = tol.active;
  b.tol_stationary = tol.stationary;
  b.seed = seed;
  b.exact_enumeration_limit = exact_enumeration_limit;
  b.max_iterations = max_iterations;
  return b;
}

std::vector<ComplementaryState> complementary_states(double k0, const BlochVector& k,
                                                     const Ensemble& ensemble,
                                                     double tol_active) {
  std::vector<ComplementaryState> out(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const double q = ensemble.prior(i);
    double r = k0 - q;
    if (r < -tol_active) {
      throw InfeasibleCertificate("dual value " + describe(k0) +
                                  " lies below prior " + describe(q));
    }
    r = std::max(r, 0.0);
    const BlochVector diff = k - q * ensemble.state(i).bloch();
    const double dist = diff.norm();
    if (dist > r + tol_active) {
      throw InfeasibleCertificate("constraint slack " + describe(r) +
                                  " cannot absorb distance " + describe(dist) +
                                  ": the dual point is infeasible");
    }
    ComplementaryState c;
    c.r = r;
    if (r <= tol_active) {
      c.degenerate = true;
      out[i] = c;
      continue;
    }
    c.u = diff / r;
    const double nu = c.u.norm();
    if (nu > 1.0) c.u = c.u / nu;
    c.pure = nu >= 1.0 - tol_active;
    out[i] = c;
  }
  return out;
}

Povm optimal_povm(const std::vector<ComplementaryState>& complementary,
                  const std::vector<double>& weights, double tol_povm) {
  if (complementary.size() != weights.size()) {
    throw WrongArity("need one weight per complementary state");
  }
  std::vector<PovmElement> elements;
  elements.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w > 0.0)) {
      elements.emplace_back();
      continue;
    }
    const ComplementaryState& c = complementary[i];
    if (c.degenerate) {
      // Deterministic-guess convention: the dominated constraint leaves no
      // slack, so the element is a multiple of the identity.
      elements.emplace_back(2.0 * w, BlochVector{}, tol_povm);
      continue;
    }
    if (!c.pure) {
      throw InfeasibleCertificate(
          "a mixed complementary state cannot carry measurement weight");
    }
    const double nu = c.u.norm();
    elements.emplace_back(2.0 * w, (-1.0 / nu) * c.u, tol_povm);
  }
  return Povm(std::move(elements), tol_povm);
}

KktResiduals kkt_verify(const Ensemble& ensemble, const Solution& solution,
                        const Tolerances& tol) {
  (void)tol;
  const std::size_t full = ensemble.original_size();
  if (solution.povm.size() != full) {
    throw WrongArity("measurement arity does not match the ensemble");
  }
  if (solution.certificate.complementary.size() != full) {
    throw WrongArity("certificate arity does not match the ensemble");
  }

  std::vector<std::size_t> to_retained(full, kNone);
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    to_retained[ensemble.original_index(i)] = i;
  }

  const double k0 = solution.certificate.k0;
  const BlochVector k = solution.certificate.k;
  KktResiduals res;
  double born_sum = 0.0;
  for (std::size_t x = 0; x < full; ++x) {
    const std::size_t ri = to_retained[x];
    const double q = ri == kNone ? 0.0 : ensemble.prior(ri);
    const BlochVector qv =
        ri == kNone ? BlochVector{} : q * ensemble.state(ri).bloch();
    const ComplementaryState& c = solution.certificate.complementary[x];

    const BlochVector g = qv + c.r * c.u;
    res.stationarity = std::max(res.stationarity, (g - k).norm());
    res.stationarity = std::max(res.stationarity, std::abs((q + c.r) - k0));

    res.feasibility = std::max(
        res.feasibility, std::max(0.0, 0.5 * ((k - qv).norm() - (k0 - q))));

    const PovmElement& m = solution.povm.element(x);
    res.slackness = std::max(
        res.slackness, std::abs(0.5 * c.r * m.m * (1.0 + dot(m.w, c.u))));

    if (ri != kNone) {
      born_sum += q * born_probability(m, ensemble.state(ri));
    }
  }
  res.duality_gap = std::abs(k0 - born_sum);
  return res;
}

double primal_value(const Ensemble& ensemble, const Povm& povm) {
  if (povm.size() != ensemble.original_size()) {
    throw WrongArity("measurement arity does not match the ensemble");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    value += ensemble.prior(i) *
             born_probability(povm.element(ensemble.original_index(i)),
                              ensemble.state(i));
  }
  return value;
}

Solution solve(const Ensemble& ensemble, const SolveOptions& options) {
  const std::size_t n = ensemble.size();
  std::vector<BlochVector> points(n);
  std::vector<double> offsets(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = ensemble.prior(i) * ensemble.state(i).bloch();
    offsets[i] = ensemble.prior(i);
  }

  BallSolution ball;
  double p = 0.0;
  if (ensemble.has_equal_priors()) {
    ball = min_enclosing_ball(points, options.ball_options());
    p = offsets[0] + ball.value;
  } else {
    ball = offset_minimax(PointSet(points, offsets), options.ball_options());
    p = ball.value;
  }

  const std::vector<ComplementaryState> retained =
      complementary_states(p, ball.center, ensemble, options.tol.active);

  // Expand everything back to the caller's indexing; states dropped for a
  // zero prior keep the trivial decomposition K = p * (K / tr K).
  const std::size_t full = ensemble.original_size();
  std::vector<ComplementaryState> complementary(full);
  for (std::size_t x = 0; x < full; ++x) {
    ComplementaryState c;
    c.r = p;
    c.u = (1.0 / p) * ball.center;
    const double nu = c.u.norm();
    if (nu > 1.0) c.u = c.u / nu;
    c.pure = nu >= 1.0 - options.tol.active;
    complementary[x] = c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    complementary[ensemble.original_index(i)] = retained[i];
  }

  std::vector<double> weights(full, 0.0);
  std::vector<std::size_t> to_retained(full, kNone);
  std::vector<std::size_t> support;
  support.reserve(ball.support.size());
  for (std::size_t i = 0; i < n; ++i) {
    to_retained[ensemble.original_index(i)] = i;
  }
  for (std::size_t s = 0; s < ball.support.size(); ++s) {
    const std::size_t orig = ensemble.original_index(ball.support[s]);
    weights[orig] = ball.support_weights[s];
    support.push_back(orig);
  }

  // Measurement assembly. A slackless state that still carries weight (a
  // dominating state, or one tied within the activity band) takes its
  // direction from the ball geometry so completeness stays exact; for pure
  // complementary states that geometry coincides with -u_x.
  std::vector<PovmElement> elements(full);
  for (std::size_t x = 0; x < full; ++x) {
    const double w = weights[x];
    if (!(w > 0.0)) continue;
    const ComplementaryState& c = complementary[x];
    if (!c.degenerate) {
      if (!c.pure) {
        throw InfeasibleCertificate(
            "a mixed complementary state cannot carry measurement weight");
      }
      const double nu = c.u.norm();
      elements[x] = PovmElement(2.0 * w, (-1.0 / nu) * c.u, options.tol.povm);
    } else {
      const BlochVector diff = ball.center - points[to_retained[x]];
      const double dist = diff.norm();
      const BlochVector dir =
          dist > 1e-13 ? (-1.0 / dist) * diff : BlochVector{};
      elements[x] = PovmElement(2.0 * w, dir, options.tol.povm);
    }
  }

  Solution sol;
  sol.p_guess = p;
  sol.certificate.k0 = p;
  sol.certificate.k = ball.center;
  sol.certificate.complementary = std::move(complementary);
  sol.povm = Povm(std::move(elements), options.tol.povm);
  sol.support = std::move(support);
  sol.diagnostics.solver_path = ball.diagnostics.path;
  sol.diagnostics.iterations = ball.diagnostics.iterations;
  sol.diagnostics.dropped_zero_priors = ensemble.dropped_zero_priors().size();

  sol.certificate.residuals = kkt_verify(ensemble, sol, options.tol);
  if (!sol.certificate.residuals.pass(options.tol.cert)) {
    throw CertificateFailure("optimality residual " +
                             describe(sol.certificate.residuals.max()) +
                             " exceeds the certification bound " +
                             describe(options.tol.cert));
  }
  return sol;
}

EquivalenceReport equivalence_class_check(const Ensemble& a, const Ensemble& b,
                                          const SolveOptions& options) {
  if (!a.has_equal_priors() || !b.has_equal_priors()) {
    throw PriorMismatch("equivalence classes are defined for equal priors");
  }
  const Solution sa = solve(a, options);
  const Solution sb = solve(b, options);
  EquivalenceReport rep;
  rep.p_a = sa.p_guess;
  rep.p_b = sb.p_guess;
  rep.radius_a = sa.p_guess - 1.0 / static_cast<double>(a.size());
  rep.radius_b = sb.p_guess - 1.0 / static_cast<double>(b.size());
  rep.equal = a.size() == b.size() &&
              std::abs(rep.radius_a - rep.radius_b) <= 1e-10;
  return rep;
}

double helstrom(const Ensemble& ensemble) {
  if (ensemble.size() != 2) {
    throw WrongArity("the closed form covers exactly two states");
  }
  const HermitianOp diff =
      weighted_difference(ensemble.prior(0), ensemble.state(0),
                          ensemble.prior(1), ensemble.state(1));
  return 0.5 * (1.0 + trace_norm(diff));
}

}  // namespace qsd
