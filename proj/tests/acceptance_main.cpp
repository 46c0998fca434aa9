// Acceptance suite: ten end-to-end criteria, one verdict line each, with the
// tolerances and runtime budgets pinned next to the checks. The path of the
// command-line binary arrives as the first argument (used by the
// determinism criterion).

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsd/discriminate.hpp"
#include "qsd/oracles.hpp"
#include "qsd/report.hpp"
#include "qsd/scenario.hpp"
#include "test_util.hpp"

using qsd::BlochVector;
using qsd::Ensemble;
using qsd::QubitState;
using qsd::Solution;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string g_qsd;
std::filesystem::path g_tmp;
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

void verdict(int index, bool ok, const std::string& name,
             const std::string& detail) {
  std::printf("%2d %s %s: %s\n", index, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// ---------- criterion 1: two-state closed form ----------

void criterion_1() {
  testutil::Rng rng(0xC1);
  Timer timer;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Ensemble e = testutil::random_ensemble(rng, 2, true, false);
    const Solution sol = qsd::solve(e);
    worst = std::max(worst, std::abs(sol.p_guess - qsd::helstrom(e)));
  }
  const double elapsed = timer.seconds();
  const bool ok = worst <= 1e-9 && elapsed < 1.0;
  verdict(1, ok, "two-state closed form",
          fmt("200 ensembles, max deviation %.2e (tol 1e-9), %.2f s (limit 1 s)",
              worst, elapsed));
}

// ---------- criterion 2: half-plane family ----------

void criterion_2() {
  testutil::Rng rng(0xC2);
  Timer timer;
  double worst = 0.0;
  for (std::size_t n : {4u, 6u, 8u, 10u}) {
    for (int draw = 0; draw < 50; ++draw) {
      const double f = rng.uniform(0.5, 1.0);
      std::vector<QubitState> states;
      states.reserve(n);
      // 1-based states x = 1..N in the xy-plane; x = N/2 gets a random angle
      // and x = N sits exactly opposite at the same maximal purity f. All
      // other purities stay strictly below f.
      const double pivot = rng.uniform(0.0, 2.0 * kPi);
      for (std::size_t x = 1; x <= n; ++x) {
        double theta;
        double purity;
        if (x == n / 2) {
          theta = pivot;
          purity = f;
        } else if (x == n) {
          theta = pivot + kPi;
          purity = f;
        } else {
          theta = rng.uniform(0.0, 2.0 * kPi);
          purity = rng.uniform(0.0, f * (1.0 - 1e-3));
        }
        states.emplace_back(
            BlochVector{purity * std::cos(theta), purity * std::sin(theta), 0.0});
      }
      const Solution sol = qsd::solve(Ensemble::with_equal_priors(states));
      const double expected = (1.0 + f) / static_cast<double>(n);
      worst = std::max(worst, std::abs(sol.p_guess - expected));
    }
  }
  const double elapsed = timer.seconds();
  const bool ok = worst <= 1e-10 && elapsed < 5.0;
  verdict(2, ok, "half-plane closed form",
          fmt("4x50 draws, max |p - (1+f)/N| = %.2e (tol 1e-10), %.2f s (limit 5 s)",
              worst, elapsed));
}

// ---------- criterion 3: planar six-state instance ----------

void criterion_3() {
  const qsd::Scenario sc = qsd::generate(qsd::GeneratorKind::Fig1a, {});
  const Ensemble e = sc.to_ensemble();
  const Solution sol = qsd::solve(e);

  const double expected = 1.0 / 6.0 + 0.9 / 6.0;
  const double dev = std::abs(sol.p_guess - expected);
  bool ok = dev <= 1e-10;

  // 1-based: outcomes {2, 5, 6} never fire, {1, 3, 4} all carry weight.
  for (std::size_t x : {1u, 4u, 5u}) ok = ok && sol.povm.element(x).m == 0.0;
  for (std::size_t x : {0u, 2u, 3u}) ok = ok && sol.povm.element(x).m > 0.0;

  verdict(3, ok, "planar six-state instance",
          fmt("|p - (1 + f_1)/6| = %.2e (tol 1e-10), null outcomes exactly {2,5,6}",
              dev));
}

// ---------- criterion 4: polyhedron family ----------

void criterion_4() {
  bool ok = true;
  double worst = 0.0;
  for (long n : {4L, 6L, 8L, 12L}) {
    const qsd::Scenario sc =
        qsd::generate(qsd::GeneratorKind::Polyhedron, {static_cast<double>(n)});
    const Ensemble e = sc.to_ensemble();
    const Solution sol = qsd::solve(e);
    const double dev = std::abs(sol.p_guess - 2.0 / static_cast<double>(n));
    worst = std::max(worst, dev);
    ok = ok && dev <= 1e-10;

    // Pull one vertex inward. For the centrally symmetric solids the other
    // vertices still pin the same ball, the moved vertex leaves the support,
    // and the value must not budge. (Every tetrahedron vertex stays on the
    // support under any inward move, so N = 4 has no such vertex to test.)
    if (n == 4) continue;
    std::vector<QubitState> moved;
    moved.reserve(sc.states.size());
    for (std::size_t i = 0; i < sc.states.size(); ++i) {
      moved.emplace_back(i == 0 ? 0.8 * sc.states[i] : sc.states[i]);
    }
    const Solution modified = qsd::solve(Ensemble::with_equal_priors(moved));
    const double drift = std::abs(modified.p_guess - sol.p_guess);
    worst = std::max(worst, drift);
    ok = ok && drift <= 1e-10;
    ok = ok && std::find(modified.support.begin(), modified.support.end(), 0u) ==
                   modified.support.end();
  }
  verdict(4, ok, "polyhedron family",
          fmt("N in {4,6,8,12}: max |p - 2/N| and inward-move drift %.2e (tol 1e-10)",
              worst));
}

// ---------- criteria 5 and 6: certificate suite and primal-dual sandwich ----------

void criteria_5_and_6() {
  testutil::Rng rng(0xC5);
  double worst_residual = 0.0;
  double worst_gap = 0.0;
  double worst_grid = 0.0;
  double primal_excess = 0.0;
  bool sandwich_ok = true;
  Timer suite_timer;
  double certificate_seconds = 0.0;

  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.next() % 15;  // N in {2..16}
    const Ensemble e = testutil::random_ensemble(rng, n, true, false);

    Timer t5;
    const Solution sol = qsd::solve(e);
    const double kkt = qsd::kkt_verify(e, sol).max();
    const double mat = qsd::matrix_check(e, sol).max();
    certificate_seconds += t5.seconds();
    worst_residual = std::max({worst_residual, kkt, mat});

    const double primal = qsd::primal_value(e, sol.povm);
    const double grid = qsd::grid_dual(e, 1e-2);
    primal_excess = std::max(primal_excess, primal - sol.p_guess);
    worst_gap = std::max(worst_gap, std::abs(primal - sol.p_guess));
    worst_grid = std::max(worst_grid, grid - sol.p_guess);
    sandwich_ok = sandwich_ok && primal <= sol.p_guess + 1e-12 &&
                  sol.p_guess <= grid + 1e-12 && grid - sol.p_guess <= 1e-2;
  }

  const bool ok5 = worst_residual <= 1e-8 && certificate_seconds < 60.0;
  verdict(5, ok5, "certificate suite",
          fmt("1000 ensembles N<=16, max residual %.2e (tol 1e-8), %.1f s (limit 60 s)",
              worst_residual, certificate_seconds));

  const bool ok6 = sandwich_ok && worst_gap <= 1e-8;
  verdict(6, ok6, "primal-dual sandwich",
          fmt("max |primal - dual| = %.2e (tol 1e-8), grid slack %.2e (<= 1e-2), %.1f s",
              worst_gap, worst_grid, suite_timer.seconds()));
  (void)primal_excess;
}

// ---------- criterion 7: subgradient oracle agreement ----------

void criterion_7() {
  testutil::Rng rng(0xC7);
  Timer timer;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next() % 15;
    const Ensemble e = testutil::random_ensemble(rng, n, true, trial % 2 == 0);
    const Solution sol = qsd::solve(e);
    const double bound = qsd::subgradient_dual(e, 1'000'000, 0xC7 + trial);
    worst = std::max(worst, std::abs(bound - sol.p_guess));
  }
  const double elapsed = timer.seconds();
  const bool ok = worst <= 1e-6 && elapsed < 120.0;
  verdict(7, ok, "subgradient oracle agreement",
          fmt("50 instances, max |bound - p| = %.2e (tol 1e-6), %.1f s (limit 120 s)",
              worst, elapsed));
}

// ---------- criterion 8: equal slack weights ----------

void criterion_8() {
  testutil::Rng rng(0xC8);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.next() % 11;
    const Ensemble e = testutil::random_ensemble(rng, n, true, true);
    const Solution sol = qsd::solve(e);
    double lo = 1e300;
    double hi = -1e300;
    for (const auto& c : sol.certificate.complementary) {
      lo = std::min(lo, c.r);
      hi = std::max(hi, c.r);
    }
    worst = std::max(worst, hi - lo);
  }
  const bool ok = worst <= 1e-10;
  verdict(8, ok, "equal slack weights",
          fmt("200 equal-prior ensembles, max spread of r = %.2e (tol 1e-10)",
              worst));
}

// ---------- criterion 9: invariance properties ----------

void criterion_9() {
  testutil::Rng rng(0xC9);
  double worst_rotation = 0.0;

  // 100 random rotations spread over 10 base ensembles.
  for (int base = 0; base < 10; ++base) {
    const std::size_t n = 3 + rng.next() % 8;
    const Ensemble e = testutil::random_ensemble(rng, n, true, base % 2 == 0);
    const double p = qsd::solve(e).p_guess;
    for (int rot = 0; rot < 10; ++rot) {
      const testutil::Rotation r = testutil::Rotation::random(rng);
      std::vector<QubitState> states;
      std::vector<double> priors;
      for (std::size_t i = 0; i < e.size(); ++i) {
        states.emplace_back(r.apply(e.state(i).bloch()));
        priors.push_back(e.prior(i));
      }
      const double rotated = qsd::solve(Ensemble(states, priors)).p_guess;
      worst_rotation = std::max(worst_rotation, std::abs(rotated - p));
    }
  }

  // 50 constructed equivalent pairs must agree through the class check.
  double worst_pair = 0.0;
  bool equal_ok = true;
  for (int pair = 0; pair < 50; ++pair) {
    const std::size_t n = 2 + rng.next() % 11;
    const Ensemble a = testutil::random_ensemble(rng, n, true, true);
    const testutil::Rotation r = testutil::Rotation::random(rng);
    std::vector<QubitState> states;
    for (std::size_t i = 0; i < a.size(); ++i) {
      states.emplace_back(r.apply(a.state(i).bloch()));
    }
    const Ensemble b = Ensemble::with_equal_priors(states);
    const qsd::EquivalenceReport rep = qsd::equivalence_class_check(a, b);
    equal_ok = equal_ok && rep.equal;
    worst_pair = std::max(worst_pair, std::abs(rep.p_a - rep.p_b));
  }

  const bool ok = worst_rotation <= 1e-12 && equal_ok && worst_pair <= 1e-10;
  verdict(9, ok, "invariance properties",
          fmt("100 rotations, max drift %.2e (tol 1e-12); 50 pairs, max gap %.2e "
              "(tol 1e-10)",
              worst_rotation, worst_pair));
}

// ---------- criterion 10: determinism ----------

std::string run_cli_capture(const std::string& args, int run_tag) {
  const std::filesystem::path out =
      g_tmp / ("c10-" + std::to_string(run_tag) + ".out");
  const std::string cmd =
      "\"" + g_qsd + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    return "nonzero-exit:" + buf.str();
  }
  return buf.str();
}

std::string replay_report(const std::string& generate_spec) {
  const std::size_t colon = generate_spec.find(':');
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream rest(generate_spec.substr(colon + 1));
    std::string piece;
    while (std::getline(rest, piece, ',')) params.push_back(std::stod(piece));
  }
  const qsd::Scenario sc =
      qsd::generate(qsd::parse_kind(generate_spec.substr(0, colon)), params);
  const std::string input = qsd::serialize_scenario(sc);
  const Ensemble e = sc.to_ensemble();
  const qsd::SolveOptions options;
  const Solution sol = qsd::solve(e, options);
  return qsd::render_report(sc, e, sol, options, input, nullptr);
}

void criterion_10() {
  const std::vector<std::string> invocations{
      "--generate fig1a --certify",
      "--generate polyhedron:4",
      "--generate polyhedron:12 --certify",
      "--generate random:10,7,1 --certify",
      "--generate random:16,99,1",
      "--generate pair:2.2,0.9,0.7",
      "--generate pair:1.0,1,1,0.3,0.7 --certify",
      "--generate halfplane:8,0.85",
      "--generate random:5,3,0 --tol 1e-6 --certify",
      "--generate halfplane:6,0.9,0.8,0.7,0.6,0.5,0.9",
  };
  bool ok = true;
  int tag = 0;
  for (const std::string& args : invocations) {
    const std::string first = run_cli_capture(args, tag++);
    const std::string second = run_cli_capture(args, tag++);
    ok = ok && !first.empty() && first == second &&
         first.rfind("nonzero-exit:", 0) != 0;
  }

  // Replay the library pipeline twice on the generator families the suite
  // exercises; the rendered reports must also be byte-identical.
  const std::vector<std::string> specs{
      "fig1a",         "polyhedron:4",  "polyhedron:6",  "polyhedron:8",
      "polyhedron:12", "polyhedron:20", "pair:2.2,0.9,0.7",
      "halfplane:8,0.85", "random:3,1,1",  "random:6,2,1",
      "random:9,3,1",  "random:12,4,1", "random:15,5,1", "random:16,6,0",
      "random:5,7,1",  "random:7,8,0",  "random:11,9,1", "random:13,10,1",
      "random:14,11,0", "random:10,12,1",
  };
  for (const std::string& spec : specs) {
    ok = ok && replay_report(spec) == replay_report(spec);
  }

  verdict(10, ok, "determinism",
          "10 command invocations run twice and 20 replayed reports, all "
          "byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-qsd>\n");
    return 64;
  }
  g_qsd = argv[1];
  g_tmp = std::filesystem::temp_directory_path() / "qsd-acceptance";
  std::filesystem::create_directories(g_tmp);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
