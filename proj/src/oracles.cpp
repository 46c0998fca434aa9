#include "qsd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace qsd {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Local copy of the dual objective so the oracles exercise the math, not the
// solver's code path.
struct DualObjective {
  std::vector<BlochVector> scaled;  // q_x v_x
  std::vector<double> priors;

  explicit DualObjective(const Ensemble& e) {
    scaled.reserve(e.size());
    priors.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      scaled.push_back(e.prior(i) * e.state(i).bloch());
      priors.push_back(e.prior(i));
    }
  }

  double eval(const BlochVector& k) const {
    double f = 0.0;
    for (std::size_t x = 0; x < scaled.size(); ++x) {
      f = std::max(f, priors[x] + (k - scaled[x]).norm());
    }
    return f;
  }

  std::size_t worst(const BlochVector& k) const {
    std::size_t best = 0;
    double f = -1.0;
    for (std::size_t x = 0; x < scaled.size(); ++x) {
      const double v = priors[x] + (k - scaled[x]).norm();
      if (v > f) {
        f = v;
        best = x;
      }
    }
    return best;
  }
};

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& s) {
  return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

// ---------- dense 2x2 complex Hermitian toolkit ----------

using cd = std::complex<double>;

struct Mat2 {
  cd a00, a01, a10, a11;
};

Mat2 operator+(const Mat2& l, const Mat2& r) {
  return {l.a00 + r.a00, l.a01 + r.a01, l.a10 + r.a10, l.a11 + r.a11};
}

Mat2 operator-(const Mat2& l, const Mat2& r) {
  return {l.a00 - r.a00, l.a01 - r.a01, l.a10 - r.a10, l.a11 - r.a11};
}

Mat2 operator*(double s, const Mat2& m) {
  return {s * m.a00, s * m.a01, s * m.a10, s * m.a11};
}

Mat2 operator*(const Mat2& l, const Mat2& r) {
  return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11,
          l.a10 * r.a00 + l.a11 * r.a10, l.a10 * r.a01 + l.a11 * r.a11};
}

Mat2 adjoint(const Mat2& m) {
  return {std::conj(m.a00), std::conj(m.a10), std::conj(m.a01), std::conj(m.a11)};
}

cd trace(const Mat2& m) { return m.a00 + m.a11; }

Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

// (t I + a . sigma) / 2 in the standard Pauli basis.
Mat2 hermitian(double t, const BlochVector& a) {
  return {cd(0.5 * (t + a.z), 0.0), cd(0.5 * a.x, -0.5 * a.y),
          cd(0.5 * a.x, 0.5 * a.y), cd(0.5 * (t - a.z), 0.0)};
}

double herm_min_eig(const Mat2& m) {
  const double tr = std::real(m.a00 + m.a11);
  const double det = std::real(m.a00 * m.a11 - m.a01 * m.a10);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return 0.5 * (tr - disc);
}

double opnorm(const Mat2& m) {
  const Mat2 g = adjoint(m) * m;
  const double tr = std::real(g.a00 + g.a11);
  const double det = std::real(g.a00 * g.a11 - g.a01 * g.a10);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

}  // namespace

double grid_dual(const Ensemble& ensemble, double step) {
  if (!(step > 0.0) || step > 0.5 || !std::isfinite(step)) {
    throw ValidationError("grid step must lie in (0, 0.5]");
  }
  const DualObjective obj(ensemble);
  const long count = static_cast<long>(std::floor(2.0 / step)) + 1;
  double best = std::numeric_limits<double>::infinity();
  for (long ix = 0; ix < count; ++ix) {
    const double x = -1.0 + static_cast<double>(ix) * step;
    const double x2 = x * x;
    if (x2 > 1.0 + 1e-12) continue;
    for (long iy = 0; iy < count; ++iy) {
      const double y = -1.0 + static_cast<double>(iy) * step;
      const double r2 = x2 + y * y;
      if (r2 > 1.0 + 1e-12) continue;
      for (long iz = 0; iz < count; ++iz) {
        const double z = -1.0 + static_cast<double>(iz) * step;
        if (r2 + z * z > 1.0 + 1e-12) continue;
        const double f = obj.eval({x, y, z});
        if (f < best) best = f;
        // The objective is 1-Lipschitz, so the next floor((f - best)/step)
        // grid points along z cannot go below the incumbent: skipping them
        // leaves the grid minimum unchanged.
        const double margin = f - best - 1e-12;
        if (margin > step) {
          iz += static_cast<long>(std::floor(margin / step));
        }
      }
    }
  }
  return best;
}

double subgradient_dual(const Ensemble& ensemble, long iterations,
                        std::uint64_t seed) {
  if (iterations <= 0) {
    throw ValidationError("iteration budget must be positive");
  }
  const DualObjective obj(ensemble);

  std::uint64_t s = seed ^ 0x5D1A4C3B2E19F807ULL;
  BlochVector k{0.1 * (unit_double(s) - 0.5), 0.1 * (unit_double(s) - 0.5),
                0.1 * (unit_double(s) - 0.5)};

  const long stage_len = std::max<long>(iterations / 24, 1);
  const double gamma0 = 0.5;
  double best = obj.eval(k);
  BlochVector avg;
  long avg_n = 0;

  for (long it = 0; it < iterations; ++it) {
    const std::size_t xs = obj.worst(k);
    const double f = obj.priors[xs] + (k - obj.scaled[xs]).norm();
    if (f < best) best = f;

    const BlochVector diff = k - obj.scaled[xs];
    const double dist = diff.norm();
    const double gamma =
        gamma0 * std::pow(0.5, static_cast<double>(it / stage_len));
    if (dist > 1e-15) {
      k = k - (gamma / dist) * diff;
    } else {
      k = k + BlochVector{gamma, 0.0, 0.0};
    }
    // The optimum lies in the unit ball, so projecting is sound.
    const double nk = k.norm();
    if (nk > 1.0) k = (1.0 / nk) * k;

    avg = avg + k;
    ++avg_n;
    if ((it + 1) % stage_len == 0 || it + 1 == iterations) {
      const BlochVector kav = avg / static_cast<double>(avg_n);
      best = std::min(best, obj.eval(kav));
      avg = BlochVector{};
      avg_n = 0;
    }
  }
  return best;
}

double MatrixCheckResult::max() const {
  return std::max({reconstruction, slackness, completeness, positivity,
                   feasibility, duality_gap});
}

bool MatrixCheckResult::pass(double tol) const { return max() <= tol; }

MatrixCheckResult matrix_check(const Ensemble& ensemble, const Solution& solution) {
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

  const Mat2 K = hermitian(solution.certificate.k0, solution.certificate.k);
  MatrixCheckResult res;

  Mat2 povm_sum{0.0, 0.0, 0.0, 0.0};
  double min_eig_seen = herm_min_eig(K);
  double born_sum = 0.0;

  for (std::size_t x = 0; x < full; ++x) {
    const std::size_t ri = to_retained[x];
    const double q = ri == kNone ? 0.0 : ensemble.prior(ri);
    const Mat2 rho = ri == kNone
                         ? Mat2{0.0, 0.0, 0.0, 0.0}
                         : hermitian(1.0, ensemble.state(ri).bloch());
    const ComplementaryState& c = solution.certificate.complementary[x];
    const Mat2 sigma = hermitian(1.0, c.u);
    const PovmElement& el = solution.povm.element(x);
    const Mat2 M = hermitian(el.m, el.m * el.w);

    povm_sum = povm_sum + M;
    min_eig_seen = std::min(min_eig_seen, herm_min_eig(M));

    res.reconstruction =
        std::max(res.reconstruction, opnorm(K - q * rho - c.r * sigma));
    res.slackness =
        std::max(res.slackness, std::abs(c.r * std::real(trace(sigma * M))));
    res.feasibility =
        std::max(res.feasibility, std::max(0.0, -herm_min_eig(K - q * rho)));
    born_sum += q * std::real(trace(rho * M));
  }

  res.completeness = opnorm(povm_sum - identity());
  res.positivity = std::max(0.0, -min_eig_seen);
  res.duality_gap = std::abs(std::real(trace(K)) - born_sum);
  return res;
}

}  // namespace qsd
