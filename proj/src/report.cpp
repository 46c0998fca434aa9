#include "qsd/report.hpp"

#include <limits>
#include <string>
#include <vector>

#include "json_text.hpp"

namespace qsd {
namespace {

using detail::ordered_json;

ordered_json vec_json(const BlochVector& v) {
  return ordered_json{v.x, v.y, v.z};
}

ordered_json residuals_json(const KktResiduals& r) {
  ordered_json j;
  j["feasibility"] = r.feasibility;
  j["stationarity"] = r.stationarity;
  j["slackness"] = r.slackness;
  j["duality_gap"] = r.duality_gap;
  j["max"] = r.max();
  return j;
}

std::string csv_row(const std::string& record, const std::string& index,
                    const std::string& x, const std::string& y,
                    const std::string& z) {
  return record + "," + index + "," + x + "," + y + "," + z + "\n";
}

}  // namespace

OracleSection run_oracles(const Ensemble& ensemble, const Solution& solution,
                          const SolveOptions& options, double grid_step,
                          long subgradient_iterations) {
  OracleSection s;
  s.grid_step = grid_step;
  s.grid_value = grid_dual(ensemble, grid_step);
  s.grid_pass = solution.p_guess <= s.grid_value + 1e-9 &&
                s.grid_value <= solution.p_guess + grid_step;
  s.subgradient_iterations = subgradient_iterations;
  s.subgradient_value =
      subgradient_dual(ensemble, subgradient_iterations, options.seed);
  s.subgradient_pass = solution.p_guess <= s.subgradient_value + 1e-9 &&
                       s.subgradient_value <= solution.p_guess + 1e-6;
  s.matrix = matrix_check(ensemble, solution);
  s.matrix_pass = s.matrix.pass(options.tol.cert);
  return s;
}

std::string render_report(const Scenario& scenario, const Ensemble& ensemble,
                          const Solution& solution, const SolveOptions& options,
                          const std::string& input_text,
                          const OracleSection* oracles) {
  ordered_json j;
  j["p_guess"] = solution.p_guess;

  ordered_json cert;
  cert["k0"] = solution.certificate.k0;
  cert["k"] = vec_json(solution.certificate.k);
  ordered_json comp = ordered_json::array();
  for (std::size_t i = 0; i < solution.certificate.complementary.size(); ++i) {
    const ComplementaryState& c = solution.certificate.complementary[i];
    ordered_json e;
    e["index"] = i;
    e["r"] = c.r;
    e["u"] = vec_json(c.u);
    e["pure"] = c.pure;
    e["degenerate"] = c.degenerate;
    comp.push_back(std::move(e));
  }
  cert["complementary"] = std::move(comp);
  j["certificate"] = std::move(cert);

  ordered_json povm = ordered_json::array();
  for (std::size_t i = 0; i < solution.povm.size(); ++i) {
    const PovmElement& el = solution.povm.element(i);
    ordered_json e;
    e["index"] = i;
    e["m"] = el.m;
    e["w"] = vec_json(el.w);
    povm.push_back(std::move(e));
  }
  j["povm"] = std::move(povm);

  ordered_json support = ordered_json::array();
  for (std::size_t s : solution.support) support.push_back(s);
  j["support"] = std::move(support);

  j["residuals"] = residuals_json(solution.certificate.residuals);

  if (oracles != nullptr) {
    ordered_json o;
    ordered_json grid;
    grid["step"] = oracles->grid_step;
    grid["value"] = oracles->grid_value;
    grid["gap"] = oracles->grid_value - solution.p_guess;
    grid["pass"] = oracles->grid_pass;
    o["grid"] = std::move(grid);
    ordered_json sub;
    sub["iterations"] = oracles->subgradient_iterations;
    sub["value"] = oracles->subgradient_value;
    sub["gap"] = oracles->subgradient_value - solution.p_guess;
    sub["pass"] = oracles->subgradient_pass;
    o["subgradient"] = std::move(sub);
    ordered_json mat;
    mat["reconstruction"] = oracles->matrix.reconstruction;
    mat["slackness"] = oracles->matrix.slackness;
    mat["completeness"] = oracles->matrix.completeness;
    mat["positivity"] = oracles->matrix.positivity;
    mat["feasibility"] = oracles->matrix.feasibility;
    mat["duality_gap"] = oracles->matrix.duality_gap;
    mat["max"] = oracles->matrix.max();
    mat["pass"] = oracles->matrix_pass;
    o["matrix"] = std::move(mat);
    o["pass"] = oracles->pass();
    j["oracles"] = std::move(o);
  }

  ordered_json prov;
  prov["input_name"] = scenario.name;
  prov["input_hash"] = "fnv1a64:" + detail::fnv1a64_hex(input_text);
  prov["states"] = ensemble.original_size();
  prov["equal_priors"] = ensemble.has_equal_priors();
  prov["solver_path"] = solution.diagnostics.solver_path;
  prov["iterations"] = solution.diagnostics.iterations;
  prov["dropped_zero_priors"] = solution.diagnostics.dropped_zero_priors;
  prov["seed"] = options.seed;
  prov["tool_version"] = "1.0.0";
  j["provenance"] = std::move(prov);

  return detail::dump_json(j);
}

std::string render_povm(const Solution& solution) {
  ordered_json j;
  j["p_guess"] = solution.p_guess;
  ordered_json povm = ordered_json::array();
  for (std::size_t i = 0; i < solution.povm.size(); ++i) {
    const PovmElement& el = solution.povm.element(i);
    ordered_json e;
    e["index"] = i;
    e["m"] = el.m;
    e["w"] = vec_json(el.w);
    povm.push_back(std::move(e));
  }
  j["povm"] = std::move(povm);
  return detail::dump_json(j);
}

std::string render_plot_data(const Ensemble& ensemble, const Solution& solution) {
  const std::size_t full = ensemble.original_size();
  std::vector<BlochVector> scaled(full);
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    scaled[ensemble.original_index(i)] =
        ensemble.prior(i) * ensemble.state(i).bloch();
  }

  std::string out = "record,index,x,y,z\n";
  for (std::size_t i = 0; i < full; ++i) {
    out += csv_row("given", std::to_string(i), detail::format_double(scaled[i].x),
                   detail::format_double(scaled[i].y),
                   detail::format_double(scaled[i].z));
  }
  for (std::size_t i = 0; i < full; ++i) {
    const BlochVector& u = solution.certificate.complementary[i].u;
    out += csv_row("complementary", std::to_string(i), detail::format_double(u.x),
                   detail::format_double(u.y), detail::format_double(u.z));
  }
  const BlochVector& k = solution.certificate.k;
  out += csv_row("center", "", detail::format_double(k.x),
                 detail::format_double(k.y), detail::format_double(k.z));
  out += csv_row("radius", "", detail::format_double(solution.p_guess), "", "");
  return out;
}

}  // namespace qsd
