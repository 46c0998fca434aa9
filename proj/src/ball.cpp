#include "qsd/ball.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace qsd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack used when testing global feasibility of a candidate optimum. The
// objective is 1-Lipschitz on the unit ball, so this bounds the value error
// of an accepted candidate.
constexpr double kFeasSlack = 1e-10;

// ---------- tiny dense solver ----------

// Gauss elimination with full pivoting on an n x n system (n <= 4). Pivots
// below rel_tol times the first pivot count as zero; the matching variables
// are fixed at zero, which picks the pivot-column-supported solution of a
// consistent rank-deficient system. Returns the numerical rank. The caller
// is responsible for checking the residual when the system may be
// inconsistent.
int solve_pivoted(int n, std::array<std::array<double, 4>, 4> A,
                  std::array<double, 4> b, std::array<double, 4>& x,
                  double rel_tol = 1e-12) {
  std::array<int, 4> col = {0, 1, 2, 3};
  int rank = 0;
  double pivot0 = 0.0;
  for (int step = 0; step < n; ++step) {
    int pr = -1, pc = -1;
    double best = 0.0;
    for (int r = step; r < n; ++r) {
      for (int c = step; c < n; ++c) {
        if (std::abs(A[r][c]) > best) {
          best = std::abs(A[r][c]);
          pr = r;
          pc = c;
        }
      }
    }
    if (step == 0) pivot0 = best;
    if (pr < 0 || best == 0.0 || best <= rel_tol * pivot0) break;
    std::swap(A[step], A[pr]);
    std::swap(b[step], b[pr]);
    for (int r = 0; r < n; ++r) std::swap(A[r][step], A[r][pc]);
    std::swap(col[step], col[pc]);
    for (int r = step + 1; r < n; ++r) {
      const double f = A[r][step] / A[step][step];
      for (int c = step; c < n; ++c) A[r][c] -= f * A[step][c];
      b[r] -= f * b[step];
    }
    ++rank;
  }
  std::array<double, 4> y{};
  for (int r = rank - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r][c] * y[c];
    y[r] = s / A[r][r];
  }
  x = {};
  for (int i = 0; i < n; ++i) x[col[i]] = y[i];
  return rank;
}

// Minimum-norm solution of M lambda = rhs for a 4 x n matrix M given by its
// columns, via lambda = M^T w with (M M^T) w = rhs. For consistent systems
// the result is the unique minimum-Euclidean-norm solution. Returns the
// residual norm(M lambda - rhs).
double least_norm(const std::vector<std::array<double, 4>>& cols,
                  const std::array<double, 4>& rhs, std::vector<double>& lambda) {
  std::array<std::array<double, 4>, 4> G{};
  for (const auto& c : cols) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) G[i][j] += c[i] * c[j];
    }
  }
  std::array<double, 4> w{};
  solve_pivoted(4, G, rhs, w);
  lambda.assign(cols.size(), 0.0);
  std::array<double, 4> res = rhs;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += cols[j][i] * w[i];
    lambda[j] = v;
    for (int i = 0; i < 4; ++i) res[i] -= cols[j][i] * v;
  }
  double r2 = 0.0;
  for (double v : res) r2 += v * v;
  return std::sqrt(r2);
}

// Deterministic shuffle (splitmix64-driven Fisher-Yates) so recursion order
// does not depend on the standard library's distribution internals.
std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void shuffle_points(std::vector<BlochVector>& pts, std::uint64_t seed) {
  std::uint64_t s = seed;
  for (std::size_t i = pts.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(splitmix64(s) % i);
    std::swap(pts[i - 1], pts[j]);
  }
}

// ---------- Welzl recursion ----------

struct Ball {
  BlochVector c;
  double r = -1.0;  // r < 0: contains nothing
};

bool ball_contains(const Ball& b, const BlochVector& p) {
  if (b.r < 0.0) return false;
  return (p - b.c).norm() <= b.r + 1e-12 * (1.0 + b.r);
}

// Smallest sphere having every point of R on its surface: the circumcenter
// within the affine hull of R. Degenerate boundary sets (collinear or
// cocircular) stay well-posed because rank-deficient directions are dropped;
// genuinely inconsistent sets fall back to the best sub-boundary ball that
// still covers R.
Ball ball_from_boundary(const std::vector<BlochVector>& R) {
  const int m = static_cast<int>(R.size());
  if (m == 0) return {};
  if (m == 1) return {R[0], 0.0};

  const int n = m - 1;
  BlochVector a[3];
  std::array<std::array<double, 4>, 4> G{};
  std::array<double, 4> d{};
  for (int i = 0; i < n; ++i) {
    a[i] = R[i + 1] - R[0];
    d[i] = 0.5 * a[i].norm2();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G[i][j] = dot(a[i], a[j]);
  }
  std::array<double, 4> beta{};
  solve_pivoted(n, G, d, beta);
  BlochVector c = R[0];
  for (int i = 0; i < n; ++i) c = c + beta[i] * a[i];
  double r = 0.0;
  for (const auto& p : R) r = std::max(r, (p - c).norm());

  bool on_surface = true;
  for (const auto& p : R) {
    on_surface = on_surface && std::abs((p - c).norm() - r) <= 1e-9 * (1.0 + r);
  }
  if (on_surface) return {c, r};

  Ball best{};
  best.r = kInf;
  for (int skip = 0; skip < m; ++skip) {
    std::vector<BlochVector> sub;
    sub.reserve(R.size() - 1);
    for (int i = 0; i < m; ++i) {
      if (i != skip) sub.push_back(R[i]);
    }
    const Ball cand = ball_from_boundary(sub);
    bool covers = true;
    for (const auto& p : R) covers = covers && ball_contains(cand, p);
    if (covers && cand.r < best.r) best = cand;
  }
  if (best.r < kInf) return best;
  return {c, r};
}

Ball welzl_mtf(std::vector<BlochVector>& pts, std::size_t end,
               std::vector<BlochVector>& boundary, long& steps) {
  Ball b = ball_from_boundary(boundary);
  if (boundary.size() == 4) return b;
  for (std::size_t i = 0; i < end; ++i) {
    ++steps;
    if (!ball_contains(b, pts[i])) {
      boundary.push_back(pts[i]);
      b = welzl_mtf(pts, i, boundary, steps);
      boundary.pop_back();
      std::rotate(pts.begin(), pts.begin() + i, pts.begin() + i + 1);
    }
  }
  return b;
}

// ---------- shared pieces ----------

double objective(const PointSet& ps, const BlochVector& k) {
  double f = -kInf;
  for (std::size_t x = 0; x < ps.size(); ++x) {
    f = std::max(f, ps.offsets[x] + (k - ps.points[x]).norm());
  }
  return f;
}

// Active-set weights: minimum-norm lambda >= 0 with sum lambda = 1 and
// sum lambda_x u_x = 0 over the active indices of (center, value).
// Coincident points (center == p_x) contribute a zero direction, since the
// norm has a full subdifferential there.
struct WeightResult {
  std::vector<double> full;  // one entry per point
  std::vector<std::size_t> support;
  std::vector<double> compact;  // parallel to support
  double residual = kInf;
};

WeightResult solve_support_weights(const BlochVector& center, double value,
                                   const PointSet& ps, double tol_active) {
  WeightResult out;
  std::vector<std::size_t> active;
  for (std::size_t x = 0; x < ps.size(); ++x) {
    if (ps.offsets[x] + (center - ps.points[x]).norm() >= value - tol_active) {
      active.push_back(x);
    }
  }
  if (active.empty()) {
    throw InfeasibleWeights("no active constraint at the proposed center");
  }

  std::vector<std::array<double, 4>> cols(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    const BlochVector diff = center - ps.points[active[i]];
    const double dist = diff.norm();
    if (dist <= 1e-14) {
      cols[i] = {0.0, 0.0, 0.0, 1.0};
    } else {
      cols[i] = {diff.x / dist, diff.y / dist, diff.z / dist, 1.0};
    }
  }
  const std::array<double, 4> rhs = {0.0, 0.0, 0.0, 1.0};

  auto measure = [&](const std::vector<int>& pick, std::vector<double>& lam) {
    std::vector<std::array<double, 4>> sub;
    sub.reserve(pick.size());
    for (int i : pick) sub.push_back(cols[i]);
    return least_norm(sub, rhs, lam);
  };

  // Greedy pass: solve on all active constraints and drop the most negative
  // weight until the rest are nonnegative. Symmetric ties (all weights
  // positive) keep the full spread, which is the minimum-norm resolution.
  std::vector<int> free_idx(active.size());
  for (std::size_t i = 0; i < free_idx.size(); ++i) free_idx[i] = static_cast<int>(i);
  std::vector<double> lam;
  double res = kInf;
  while (!free_idx.empty()) {
    res = measure(free_idx, lam);
    int worst = -1;
    double worst_v = -1e-12;
    for (std::size_t i = 0; i < free_idx.size(); ++i) {
      if (lam[i] < worst_v) {
        worst_v = lam[i];
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0) break;
    free_idx.erase(free_idx.begin() + worst);
  }

  std::vector<double> lam_active(active.size(), 0.0);
  for (std::size_t i = 0; i < free_idx.size(); ++i) {
    lam_active[free_idx[i]] = std::max(0.0, lam[i]);
  }

  // Exhaustive fallback over sub-supports of size <= 4; a certifiable
  // optimum always has one.
  auto full_residual = [&](const std::vector<double>& la) {
    std::array<double, 4> acc = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < la.size(); ++i) {
      for (int c = 0; c < 4; ++c) acc[c] += la[i] * cols[i][c];
    }
    acc[3] -= 1.0;
    return std::sqrt(acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2] +
                     acc[3] * acc[3]);
  };

  double sum = 0.0;
  for (double v : lam_active) sum += v;
  if (sum > 0.0) {
    for (double& v : lam_active) v /= sum;
  }
  res = full_residual(lam_active);

  if (res > 1e-11 || sum <= 0.0) {
    const int na = static_cast<int>(active.size());
    std::vector<double> best_lam;
    double best_res = kInf;
    std::vector<int> pick;
    std::vector<double> sub_lam;
    auto consider = [&]() {
      const double r = measure(pick, sub_lam);
      double lo = 0.0;
      for (double v : sub_lam) lo = std::min(lo, v);
      if (lo < -1e-9 || r >= best_res) return;
      best_res = r;
      best_lam.assign(active.size(), 0.0);
      for (std::size_t i = 0; i < pick.size(); ++i) {
        best_lam[pick[i]] = std::max(0.0, sub_lam[i]);
      }
    };
    for (int i = 0; i < na; ++i) {
      pick = {i};
      consider();
      for (int j = i + 1; j < na; ++j) {
        pick = {i, j};
        consider();
        for (int l = j + 1; l < na; ++l) {
          pick = {i, j, l};
          consider();
          for (int h = l + 1; h < na; ++h) {
            pick = {i, j, l, h};
            consider();
          }
        }
      }
    }
    if (best_res < res) {
      lam_active = best_lam;
      sum = 0.0;
      for (double v : lam_active) sum += v;
      if (sum > 0.0) {
        for (double& v : lam_active) v /= sum;
      }
      res = full_residual(lam_active);
    }
  }

  out.residual = res;
  out.full.assign(ps.size(), 0.0);
  out.support = active;
  out.compact = lam_active;
  for (std::size_t i = 0; i < active.size(); ++i) out.full[active[i]] = lam_active[i];
  return out;
}

// ---------- candidate active sets ----------

struct Candidate {
  double t = kInf;
  BlochVector k;
  bool valid = false;
};

// Solves the stationarity system of a prospective active set S: every
// constraint in S tight at (k, t), k in the affine hull of the members, and
// a convex combination of the unit directions equal to zero. A candidate is
// accepted only if no constraint outside S is violated, which certifies the
// global optimum of the convex objective.
Candidate try_active_set(const PointSet& ps, const std::size_t* idx, int m) {
  Candidate out;
  const auto& P = ps.points;
  const auto& Q = ps.offsets;
  const std::size_t n_all = ps.size();

  if (m == 1) {
    const BlochVector k = P[idx[0]];
    const double t = Q[idx[0]];
    for (std::size_t j = 0; j < n_all; ++j) {
      if (Q[j] + (k - P[j]).norm() > t + kFeasSlack) return out;
    }
    out.t = t;
    out.k = k;
    out.valid = true;
    return out;
  }

  const BlochVector p0 = P[idx[0]];
  const double q0 = Q[idx[0]];
  const int n = m - 1;
  BlochVector a[3];
  std::array<std::array<double, 4>, 4> G{};
  std::array<double, 4> h{};
  std::array<double, 4> dq{};
  for (int i = 0; i < n; ++i) {
    const BlochVector pi = P[idx[i + 1]];
    const double qi = Q[idx[i + 1]];
    a[i] = pi - p0;
    dq[i] = qi - q0;
    h[i] = 0.5 * (pi.norm2() - p0.norm2() - qi * qi + q0 * q0) - dot(a[i], p0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G[i][j] = dot(a[i], a[j]);
  }

  // Affinely dependent members never form a minimal active set; a smaller
  // subset will produce the same optimum.
  std::array<double, 4> alpha{};
  std::array<double, 4> beta{};
  if (solve_pivoted(n, G, h, alpha, 1e-10) < n) return out;
  solve_pivoted(n, G, dq, beta, 1e-10);

  // Tightness of the base constraint turns into a quadratic in t. (The
  // products below use G alpha = h and G beta = dq.)
  double aGa = 0.0, aGb = 0.0, bGb = 0.0;
  for (int i = 0; i < n; ++i) {
    aGa += alpha[i] * h[i];
    aGb += alpha[i] * dq[i];
    bGb += beta[i] * dq[i];
  }
  const double A2 = bGb - 1.0;
  const double A1 = 2.0 * aGb + 2.0 * q0;
  const double A0 = aGa - q0 * q0;

  double roots[2];
  int nroots = 0;
  if (std::abs(A2) < 1e-14) {
    if (std::abs(A1) > 1e-14) roots[nroots++] = -A0 / A1;
  } else {
    double disc = A1 * A1 - 4.0 * A2 * A0;
    if (disc >= -1e-12 * (A1 * A1 + std::abs(4.0 * A2 * A0))) {
      disc = std::max(disc, 0.0);
      const double s = std::sqrt(disc);
      const double qq = -0.5 * (A1 + (A1 >= 0.0 ? s : -s));
      if (qq != 0.0) {
        roots[nroots++] = qq / A2;
        roots[nroots++] = A0 / qq;
      } else {
        roots[nroots++] = 0.0;
      }
    }
  }
  if (nroots == 2 && roots[1] < roots[0]) std::swap(roots[0], roots[1]);

  double qmax = q0;
  for (int i = 1; i < m; ++i) qmax = std::max(qmax, Q[idx[i]]);

  for (int ri = 0; ri < nroots; ++ri) {
    const double t = roots[ri];
    if (!(t >= qmax - 1e-12) || !std::isfinite(t)) continue;
    BlochVector k = p0;
    for (int i = 0; i < n; ++i) k = k + (alpha[i] + beta[i] * t) * a[i];

    bool tight = true;
    for (int i = 0; i < m && tight; ++i) {
      const double dist = (k - P[idx[i]]).norm();
      tight = std::abs(dist - (t - Q[idx[i]])) <= 1e-8 * (1.0 + std::abs(t));
    }
    if (!tight) continue;

    bool smooth = true;
    std::vector<std::array<double, 4>> cols(m);
    for (int i = 0; i < m; ++i) {
      const BlochVector diff = k - P[idx[i]];
      const double dist = diff.norm();
      if (dist < 1e-12) {
        smooth = false;  // collapses onto a member: singleton case covers it
        break;
      }
      cols[i] = {diff.x / dist, diff.y / dist, diff.z / dist, 1.0};
    }
    if (!smooth) continue;

    std::vector<double> lam;
    const double res = least_norm(cols, {0.0, 0.0, 0.0, 1.0}, lam);
    if (res > 1e-8) continue;
    double lo = 0.0;
    for (double v : lam) lo = std::min(lo, v);
    if (lo < -1e-9) continue;

    bool feasible = true;
    for (std::size_t j = 0; j < n_all && feasible; ++j) {
      feasible = Q[j] + (k - P[j]).norm() <= t + kFeasSlack;
    }
    if (!feasible) continue;

    out.t = t;
    out.k = k;
    out.valid = true;
    return out;
  }
  return out;
}

Candidate enumerate_active_sets(const PointSet& ps,
                                const std::vector<std::size_t>& pool,
                                long& examined) {
  const int n = static_cast<int>(pool.size());
  std::size_t S[4];
  for (int i = 0; i < n; ++i) {
    S[0] = pool[i];
    ++examined;
    Candidate c = try_active_set(ps, S, 1);
    if (c.valid) return c;
  }
  for (int i = 0; i < n; ++i) {
    S[0] = pool[i];
    for (int j = i + 1; j < n; ++j) {
      S[1] = pool[j];
      ++examined;
      Candidate c = try_active_set(ps, S, 2);
      if (c.valid) return c;
    }
  }
  for (int i = 0; i < n; ++i) {
    S[0] = pool[i];
    for (int j = i + 1; j < n; ++j) {
      S[1] = pool[j];
      for (int l = j + 1; l < n; ++l) {
        S[2] = pool[l];
        ++examined;
        Candidate c = try_active_set(ps, S, 3);
        if (c.valid) return c;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    S[0] = pool[i];
    for (int j = i + 1; j < n; ++j) {
      S[1] = pool[j];
      for (int l = j + 1; l < n; ++l) {
        S[2] = pool[l];
        for (int h = l + 1; h < n; ++h) {
          S[3] = pool[h];
          ++examined;
          Candidate c = try_active_set(ps, S, 4);
          if (c.valid) return c;
        }
      }
    }
  }
  return {};
}

// Subgradient descent with stage-wise halved steps. It only needs to
// localize the active set: after every chunk the most active constraints
// are handed to the exact enumeration, whose acceptance check certifies
// global optimality, so the loop usually exits after a few hundred steps.
Candidate subgradient_localize(const PointSet& ps, const BallOptions& opt,
                               long& iterations) {
  const std::size_t n = ps.size();
  BlochVector k;
  for (const auto& p : ps.points) k = k + p;
  k = k / static_cast<double>(n);

  const long budget = std::max<long>(opt.max_iterations, 1);
  const long stage_len = std::max<long>(budget / 24, 1);
  const long chunk = 512;
  const double gamma0 = 0.5;

  BlochVector best_k = k;
  double best_f = objective(ps, k);
  BlochVector avg;
  long avg_n = 0;

  for (long it = 0; it < budget; ++it) {
    std::size_t xs = 0;
    double f = -kInf;
    for (std::size_t x = 0; x < n; ++x) {
      const double v = ps.offsets[x] + (k - ps.points[x]).norm();
      if (v > f) {
        f = v;
        xs = x;
      }
    }
    if (f < best_f) {
      best_f = f;
      best_k = k;
    }
    const BlochVector diff = k - ps.points[xs];
    const double dist = diff.norm();
    const double gamma = gamma0 * std::pow(0.5, static_cast<double>(it / stage_len));
    if (dist > 1e-15) {
      k = k - (gamma / dist) * diff;
    } else {
      // Sitting exactly on the worst point: nudge away from the runner-up so
      // progress can continue if the singleton is not optimal.
      std::size_t second = xs == 0 ? 1 : 0;
      double f2 = -kInf;
      for (std::size_t x = 0; x < n; ++x) {
        if (x == xs) continue;
        const double v = ps.offsets[x] + (k - ps.points[x]).norm();
        if (v > f2) {
          f2 = v;
          second = x;
        }
      }
      const BlochVector d2 = k - ps.points[second];
      const double n2 = d2.norm();
      if (n2 > 1e-15) k = k - (gamma / n2) * d2;
    }
    avg = avg + k;
    ++avg_n;

    if ((it + 1) % chunk == 0 || it + 1 == budget) {
      const BlochVector kav = avg / static_cast<double>(avg_n);
      if (objective(ps, kav) < best_f) {
        best_f = objective(ps, kav);
        best_k = kav;
      }
      avg = BlochVector{};
      avg_n = 0;

      // candidate pool: most active constraints at the incumbent
      std::vector<std::size_t> order(n);
      for (std::size_t x = 0; x < n; ++x) order[x] = x;
      std::vector<double> act(n);
      for (std::size_t x = 0; x < n; ++x) {
        act[x] = ps.offsets[x] + (best_k - ps.points[x]).norm();
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t u, std::size_t v) { return act[u] > act[v]; });
      std::vector<std::size_t> pool(
          order.begin(),
          order.begin() + std::min<std::size_t>(n, 12));
      std::sort(pool.begin(), pool.end());
      long examined = 0;
      Candidate c = enumerate_active_sets(ps, pool, examined);
      if (c.valid) {
        iterations = it + 1;
        return c;
      }
    }
  }
  iterations = budget;
  return {};
}

void validate_point_set(const PointSet& ps) {
  if (ps.size() == 0) {
    throw InvalidInstance("point set must contain at least one point");
  }
}

BallSolution finish_solution(const PointSet& ps, const BlochVector& center,
                             BallDiagnostics diag, const BallOptions& opt) {
  BallSolution sol;
  sol.center = center;
  sol.value = objective(ps, center);
  WeightResult w = solve_support_weights(center, sol.value, ps, opt.tol_active);
  if (w.residual > opt.tol_stationary) {
    throw NoConvergence("stationarity residual " + std::to_string(w.residual) +
                        " exceeds the required bound");
  }
  sol.support = std::move(w.support);
  sol.support_weights = std::move(w.compact);
  sol.diagnostics = std::move(diag);
  return sol;
}

}  // namespace

PointSet::PointSet(std::vector<BlochVector> pts, std::vector<double> offs)
    : points(std::move(pts)), offsets(std::move(offs)) {
  if (points.size() != offsets.size()) {
    throw ValidationError("point set needs one offset per point");
  }
  for (double o : offsets) {
    if (!std::isfinite(o) || o < 0.0) {
      throw ValidationError("offsets must be finite and nonnegative");
    }
  }
}

PointSet PointSet::unweighted(std::vector<BlochVector> pts) {
  std::vector<double> offs(pts.size(), 0.0);
  return PointSet(std::move(pts), std::move(offs));
}

BallSolution min_enclosing_ball(const std::vector<BlochVector>& points,
                                const BallOptions& options) {
  PointSet ps = PointSet::unweighted(points);
  validate_point_set(ps);

  std::vector<BlochVector> shuffled = points;
  shuffle_points(shuffled, options.seed);
  std::vector<BlochVector> boundary;
  long steps = 0;
  const Ball b = welzl_mtf(shuffled, shuffled.size(), boundary, steps);

  try {
    return finish_solution(ps, b.c, {"enclosing-ball", steps}, options);
  } catch (const Error&) {
    // Degenerate recursion outcome: fall back to the certified minimax
    // solver on zero offsets, which must agree.
    BallOptions fallback = options;
    fallback.exact_enumeration_limit =
        std::max<std::size_t>(fallback.exact_enumeration_limit, 16);
    BallSolution sol = offset_minimax(ps, fallback);
    sol.diagnostics.path = "enclosing-ball+fallback";
    return sol;
  }
}

BallSolution offset_minimax(const PointSet& ps, const BallOptions& options) {
  validate_point_set(ps);
  const std::size_t n = ps.size();

  Candidate cand;
  BallDiagnostics diag;
  if (n <= options.exact_enumeration_limit) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    long examined = 0;
    cand = enumerate_active_sets(ps, pool, examined);
    diag = {"active-set", examined};
  }
  if (!cand.valid) {
    long iterations = 0;
    cand = subgradient_localize(ps, options, iterations);
    diag = {"subgradient+active-set", iterations};
    if (!cand.valid) {
      throw NoConvergence("offset minimax did not certify an optimum within " +
                          std::to_string(options.max_iterations) + " iterations");
    }
  }
  return finish_solution(ps, cand.k, std::move(diag), options);
}

std::vector<double> support_weights(const BlochVector& center, double value,
                                    const PointSet& ps, const BallOptions& options) {
  validate_point_set(ps);
  WeightResult w = solve_support_weights(center, value, ps, options.tol_active);
  if (w.residual > options.tol_active) {
    throw InfeasibleWeights(
        "no nonnegative direction combination vanishes at the proposed center");
  }
  return w.full;
}

}  // namespace qsd
