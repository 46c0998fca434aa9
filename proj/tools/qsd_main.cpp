#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsd/discriminate.hpp"
#include "qsd/errors.hpp"
#include "qsd/report.hpp"
#include "qsd/scenario.hpp"

namespace {

// File-system problems are input errors for exit-code purposes.
struct IoError : qsd::Error {
  using Error::Error;
};

struct CliOptions {
  std::optional<std::string> scenario_file;
  std::optional<std::string> generate_spec;
  std::vector<std::string> tol_specs;
  bool certify = false;
  std::optional<std::string> export_povm;
  std::optional<std::string> plot_data;
  std::optional<std::string> emit_scenario;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  bool help = false;
};

const char* kUsage =
    "qsd - minimum-error discrimination of qubit ensembles\n"
    "\n"
    "usage: qsd (--scenario FILE | --generate KIND[:P1,P2,...]) [options]\n"
    "\n"
    "options:\n"
    "  --scenario FILE       read a scenario document\n"
    "  --generate SPEC       build a scenario: pair:angle,f1,f2[,q1,q2] |\n"
    "                        halfplane:N,f... | polyhedron:N |\n"
    "                        random:N,seed,mixed | fig1a[:f]\n"
    "  --tol [NAME=]VALUE    override a tolerance (state, prior, povm,\n"
    "                        active, stationary, cert); bare VALUE sets cert\n"
    "  --certify             run the grid/subgradient/matrix oracles\n"
    "  --export-povm FILE    write the optimal measurement\n"
    "  --plot-data FILE      write ball geometry as delimited text\n"
    "  --emit-scenario FILE  write the scenario actually solved\n"
    "  --seed N              seed for solver shuffles and the subgradient\n"
    "                        oracle\n"
    "  --quiet               suppress the report on standard output\n"
    "  --help                show this message\n"
    "\n"
    "exit codes: 0 success, 1 input error, 2 certificate or verification\n"
    "failure\n";

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw qsd::BadParams(what + ": '" + text + "' is not a number");
  }
  if (used != text.size()) {
    throw qsd::BadParams(what + ": '" + text + "' is not a number");
  }
  return v;
}

CliOptions parse_args(int argc, char** argv) {
  CliOptions cli;
  auto value_of = [&](int& i, const std::string& flag) -> std::string {
    if (i + 1 >= argc) {
      throw qsd::BadParams(flag + " requires a value");
    }
    return argv[++i];
  };
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scenario") {
      cli.scenario_file = value_of(i, arg);
    } else if (arg == "--generate") {
      cli.generate_spec = value_of(i, arg);
    } else if (arg == "--tol") {
      cli.tol_specs.push_back(value_of(i, arg));
    } else if (arg == "--certify") {
      cli.certify = true;
    } else if (arg == "--export-povm") {
      cli.export_povm = value_of(i, arg);
    } else if (arg == "--plot-data") {
      cli.plot_data = value_of(i, arg);
    } else if (arg == "--emit-scenario") {
      cli.emit_scenario = value_of(i, arg);
    } else if (arg == "--seed") {
      const std::string text = value_of(i, arg);
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
        v = std::stoull(text, &used);
      } catch (const std::exception&) {
        throw qsd::BadParams("--seed: '" + text + "' is not a nonnegative integer");
      }
      if (used != text.size()) {
        throw qsd::BadParams("--seed: '" + text + "' is not a nonnegative integer");
      }
      cli.seed = static_cast<std::uint64_t>(v);
    } else if (arg == "--quiet") {
      cli.quiet = true;
    } else if (arg == "--help") {
      cli.help = true;
    } else {
      throw qsd::BadParams("unknown flag '" + arg + "'");
    }
  }
  return cli;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write '" + path + "'");
  }
  out << content;
  if (!out) {
    throw IoError("cannot write '" + path + "'");
  }
}

qsd::Scenario build_generated(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string kind_name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string::npos) {
    const std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t comma = rest.find(',', start);
      const std::string piece =
          rest.substr(start, comma == std::string::npos ? comma : comma - start);
      if (piece.empty()) {
        throw qsd::BadParams("--generate: empty parameter in '" + spec + "'");
      }
      params.push_back(parse_double(piece, "--generate parameter"));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return qsd::generate(qsd::parse_kind(kind_name), params);
}

void apply_tol_spec(qsd::ToleranceOverrides& tol, const std::string& spec) {
  std::string name = "cert";
  std::string value_text = spec;
  const std::size_t eq = spec.find('=');
  if (eq != std::string::npos) {
    name = spec.substr(0, eq);
    value_text = spec.substr(eq + 1);
  }
  const double v = parse_double(value_text, "--tol " + name);
  if (!(v > 0.0)) {
    throw qsd::BadParams("--tol " + name + " must be positive");
  }
  if (name == "state") {
    tol.state = v;
  } else if (name == "prior") {
    tol.prior = v;
  } else if (name == "povm") {
    tol.povm = v;
  } else if (name == "active") {
    tol.active = v;
  } else if (name == "stationary") {
    tol.stationary = v;
  } else if (name == "cert") {
    tol.cert = v;
  } else {
    throw qsd::BadParams("--tol: unknown tolerance '" + name + "'");
  }
}

int run(const CliOptions& cli) {
  if (cli.scenario_file && cli.generate_spec) {
    throw qsd::BadParams("--scenario and --generate are mutually exclusive");
  }
  if (!cli.scenario_file && !cli.generate_spec) {
    throw qsd::BadParams("one of --scenario or --generate is required");
  }

  qsd::Scenario scenario;
  std::string input_text;
  if (cli.scenario_file) {
    input_text = read_file(*cli.scenario_file);
    scenario = qsd::parse_scenario(input_text);
  } else {
    scenario = build_generated(*cli.generate_spec);
    input_text = qsd::serialize_scenario(scenario);
  }
  for (const std::string& spec : cli.tol_specs) {
    apply_tol_spec(scenario.tolerances, spec);
  }

  const qsd::Ensemble ensemble = scenario.to_ensemble();
  qsd::SolveOptions options;
  options.tol = scenario.tolerances.resolve();
  if (cli.seed) options.seed = *cli.seed;

  const qsd::Solution solution = qsd::solve(ensemble, options);

  std::optional<qsd::OracleSection> oracles;
  if (cli.certify) {
    oracles = qsd::run_oracles(ensemble, solution, options);
  }

  if (cli.emit_scenario) {
    write_file(*cli.emit_scenario, qsd::serialize_scenario(scenario));
  }
  if (cli.export_povm) {
    write_file(*cli.export_povm, qsd::render_povm(solution));
  }
  if (cli.plot_data) {
    write_file(*cli.plot_data, qsd::render_plot_data(ensemble, solution));
  }
  if (!cli.quiet) {
    std::cout << qsd::render_report(scenario, ensemble, solution, options,
                                    input_text,
                                    oracles ? &*oracles : nullptr);
  }
  if (oracles && !oracles->pass()) {
    std::cerr << "error: oracle cross-check disagrees with the solution\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions cli;
  try {
    cli = parse_args(argc, argv);
  } catch (const qsd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (cli.help) {
    std::cout << kUsage;
    return 0;
  }
  try {
    return run(cli);
  } catch (const qsd::CertificateFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsd::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsd::InfeasibleWeights& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsd::InfeasibleCertificate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: unexpected failure: " << e.what() << "\n";
    return 2;
  }
}
