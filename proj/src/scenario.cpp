#include "qsd/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "json_text.hpp"

namespace qsd {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

double require_number(const json& j, const std::string& field) {
  if (!j.is_number()) {
    throw ValidationError("field '" + field + "' must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ValidationError("field '" + field + "' must be finite");
  }
  return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      known = known || it.key() == k;
    }
    if (!known) {
      throw ValidationError("unknown field '" + it.key() + "' in " + where);
    }
  }
}

BlochVector parse_state(const json& st, std::size_t index, bool& saw_bloch,
                        bool& saw_spherical) {
  const std::string where = "states[" + std::to_string(index) + "]";
  if (!st.is_object()) {
    throw ValidationError(where + " must be an object");
  }
  if (st.contains("bloch")) {
    reject_unknown_keys(st, {"bloch"}, where);
    saw_bloch = true;
    const json& b = st["bloch"];
    if (!b.is_array() || b.size() != 3) {
      throw ValidationError(where + ".bloch must be an array of three numbers");
    }
    return {require_number(b[0], where + ".bloch[0]"),
            require_number(b[1], where + ".bloch[1]"),
            require_number(b[2], where + ".bloch[2]")};
  }
  if (st.contains("theta") || st.contains("phi") || st.contains("purity")) {
    reject_unknown_keys(st, {"theta", "phi", "purity"}, where);
    if (!(st.contains("theta") && st.contains("phi") && st.contains("purity"))) {
      throw ValidationError(where + " needs all of theta, phi, purity");
    }
    saw_spherical = true;
    const double theta = require_number(st["theta"], where + ".theta");
    const double phi = require_number(st["phi"], where + ".phi");
    const double purity = require_number(st["purity"], where + ".purity");
    if (purity < 0.0) {
      throw ValidationError(where + ".purity must be nonnegative");
    }
    return {purity * std::sin(theta) * std::cos(phi),
            purity * std::sin(theta) * std::sin(phi),
            purity * std::cos(theta)};
  }
  throw ValidationError(where + " must carry either bloch or theta/phi/purity");
}

// ---------- generator helpers ----------

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

BlochVector random_direction(std::uint64_t& s) {
  while (true) {
    const double u1 = 1.0 - unit_double(s);  // (0, 1]
    const double u2 = unit_double(s);
    const double u3 = 1.0 - unit_double(s);
    const double u4 = unit_double(s);
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    const BlochVector g{r1 * std::cos(2.0 * kPi * u2),
                        r1 * std::sin(2.0 * kPi * u2),
                        r2 * std::cos(2.0 * kPi * u4)};
    const double n = g.norm();
    if (n > 1e-12) return (1.0 / n) * g;
  }
}

long require_count(double v, const char* what, long lo, long hi) {
  const long n = static_cast<long>(v);
  if (static_cast<double>(n) != v || n < lo || n > hi) {
    throw BadParams(std::string(what) + " must be an integer in [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return n;
}

double require_purity(double f, const char* what) {
  if (!(f >= 0.0) || f > 1.0) {
    throw BadParams(std::string(what) + " must lie in [0, 1]");
  }
  return f;
}

Scenario make_equal(std::string name, std::vector<BlochVector> states) {
  Scenario s;
  s.name = std::move(name);
  s.states = std::move(states);
  s.equal_priors = true;
  return s;
}

Scenario generate_pair(const std::vector<double>& params) {
  if (params.size() != 3 && params.size() != 5) {
    throw BadParams("pair needs angle, purity1, purity2 [, prior1, prior2]");
  }
  const double angle = params[0];
  if (!std::isfinite(angle)) throw BadParams("pair angle must be finite");
  const double f1 = require_purity(params[1], "pair purity1");
  const double f2 = require_purity(params[2], "pair purity2");
  Scenario s;
  s.name = "pair";
  s.states = {{0.0, 0.0, f1},
              {f2 * std::sin(angle), 0.0, f2 * std::cos(angle)}};
  if (params.size() == 5) {
    s.priors = {params[3], params[4]};
  } else {
    s.equal_priors = true;
  }
  return s;
}

Scenario generate_halfplane(const std::vector<double>& params) {
  if (params.empty()) {
    throw BadParams("halfplane needs N followed by one purity or N purities");
  }
  const long n = require_count(params[0], "halfplane N", 2, 4096);
  std::vector<double> purity;
  if (params.size() == 2) {
    purity.assign(static_cast<std::size_t>(n),
                  require_purity(params[1], "halfplane purity"));
  } else if (params.size() == static_cast<std::size_t>(n) + 1) {
    for (long i = 0; i < n; ++i) {
      purity.push_back(require_purity(params[static_cast<std::size_t>(i) + 1],
                                      "halfplane purity"));
    }
  } else {
    throw BadParams("halfplane needs N followed by one purity or N purities");
  }
  std::vector<BlochVector> states;
  states.reserve(purity.size());
  for (long x = 1; x <= n; ++x) {
    const double theta = 2.0 * kPi * static_cast<double>(x) / static_cast<double>(n);
    const double f = purity[static_cast<std::size_t>(x - 1)];
    states.push_back({f * std::cos(theta), f * std::sin(theta), 0.0});
  }
  return make_equal("halfplane-" + std::to_string(n), std::move(states));
}

Scenario generate_polyhedron(const std::vector<double>& params) {
  if (params.size() != 1) throw BadParams("polyhedron needs N");
  const long n = require_count(params[0], "polyhedron N", 4, 20);
  std::vector<BlochVector> v;
  const double s3 = 1.0 / std::sqrt(3.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (n) {
    case 4:
      v = {{s3, s3, s3}, {s3, -s3, -s3}, {-s3, s3, -s3}, {-s3, -s3, s3}};
      break;
    case 6:
      v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case 8:
      for (int a = -1; a <= 1; a += 2)
        for (int b = -1; b <= 1; b += 2)
          for (int c = -1; c <= 1; c += 2) v.push_back({a * s3, b * s3, c * s3});
      break;
    case 12: {
      const double norm = std::sqrt(1.0 + phi * phi);
      for (int a = -1; a <= 1; a += 2) {
        for (int b = -1; b <= 1; b += 2) {
          v.push_back({0.0, a / norm, b * phi / norm});
          v.push_back({a / norm, b * phi / norm, 0.0});
          v.push_back({b * phi / norm, 0.0, a / norm});
        }
      }
      break;
    }
    case 20: {
      for (int a = -1; a <= 1; a += 2)
        for (int b = -1; b <= 1; b += 2)
          for (int c = -1; c <= 1; c += 2) v.push_back({a * s3, b * s3, c * s3});
      const double ip = s3 / phi;
      const double p3 = s3 * phi;
      for (int a = -1; a <= 1; a += 2) {
        for (int b = -1; b <= 1; b += 2) {
          v.push_back({0.0, a * ip, b * p3});
          v.push_back({a * ip, b * p3, 0.0});
          v.push_back({b * p3, 0.0, a * ip});
        }
      }
      break;
    }
    default:
      throw BadParams("polyhedron N must be one of 4, 6, 8, 12, 20");
  }
  return make_equal("polyhedron-" + std::to_string(n), std::move(v));
}

Scenario generate_random(const std::vector<double>& params) {
  if (params.size() != 3) throw BadParams("random needs N, seed, mixed");
  const long n = require_count(params[0], "random N", 2, 4096);
  if (!(params[1] >= 0.0) || params[1] != std::floor(params[1]) ||
      params[1] > 9.007199254740992e15) {
    throw BadParams("random seed must be a nonnegative integer");
  }
  if (params[2] != 0.0 && params[2] != 1.0) {
    throw BadParams("random mixed flag must be 0 or 1");
  }
  const bool mixed = params[2] == 1.0;
  std::uint64_t s = static_cast<std::uint64_t>(params[1]) ^ 0xA02B'DBF7'BB3C'0A7ULL;

  Scenario out;
  out.name = "random-" + std::to_string(n) + "-" +
             std::to_string(static_cast<std::uint64_t>(params[1])) +
             (mixed ? "-mixed" : "-pure");
  out.states.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const BlochVector dir = random_direction(s);
    const double f = mixed ? unit_double(s) : 1.0;
    out.states.push_back(f * dir);
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& wi : w) {
    wi = -std::log(1.0 - unit_double(s));
    total += wi;
  }
  out.priors.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.priors[i] = w[i] / total;
  return out;
}

Scenario generate_fig1a(const std::vector<double>& params) {
  if (params.size() > 1) throw BadParams("fig1a takes at most one purity");
  const double f = params.empty() ? 0.9 : require_purity(params[0], "fig1a purity");
  // Six coplanar states with three maximal-purity members whose directions
  // span the center: the enclosing ball is then the circumcircle of those
  // three, and every one of them carries measurement weight.
  const double deg[6] = {90.0, 150.0, 200.0, 330.0, 250.0, 20.0};
  const double scale[6] = {1.0, 0.55, 1.0, 1.0, 0.6, 0.5};
  std::vector<BlochVector> states;
  states.reserve(6);
  for (int i = 0; i < 6; ++i) {
    const double theta = deg[i] * kPi / 180.0;
    const double fx = f * scale[i];
    states.push_back({fx * std::cos(theta), fx * std::sin(theta), 0.0});
  }
  return make_equal("fig1a", std::move(states));
}

}  // namespace

bool ToleranceOverrides::any() const {
  return state || prior || povm || active || stationary || cert;
}

Tolerances ToleranceOverrides::resolve(const Tolerances& base) const {
  Tolerances t = base;
  if (state) t.state = *state;
  if (prior) t.prior = *prior;
  if (povm) t.povm = *povm;
  if (active) t.active = *active;
  if (stationary) t.stationary = *stationary;
  if (cert) t.cert = *cert;
  return t;
}

Ensemble Scenario::to_ensemble() const {
  const Tolerances tol = tolerances.resolve();
  std::vector<QubitState> qs;
  qs.reserve(states.size());
  for (const auto& v : states) qs.emplace_back(v, tol.state);
  if (equal_priors) {
    return Ensemble::with_equal_priors(std::move(qs));
  }
  return Ensemble(std::move(qs), priors, tol.prior);
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError("scenario must be an object");
  }
  reject_unknown_keys(j, {"name", "states", "priors", "tolerances"}, "scenario");

  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) {
      throw ValidationError("field 'name' must be a string");
    }
    s.name = j["name"].get<std::string>();
  }

  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty()) {
    throw ValidationError("field 'states' must be a nonempty array");
  }
  bool saw_bloch = false;
  bool saw_spherical = false;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    s.states.push_back(parse_state(j["states"][i], i, saw_bloch, saw_spherical));
  }
  if (saw_bloch && saw_spherical) {
    throw ValidationError("states must not mix bloch and spherical encodings");
  }

  if (!j.contains("priors")) {
    throw ValidationError("field 'priors' is required");
  }
  const json& pr = j["priors"];
  if (pr.is_string()) {
    if (pr.get<std::string>() != "equal") {
      throw ValidationError("field 'priors' must be a list or the keyword \"equal\"");
    }
    s.equal_priors = true;
  } else if (pr.is_array()) {
    for (std::size_t i = 0; i < pr.size(); ++i) {
      s.priors.push_back(require_number(pr[i], "priors[" + std::to_string(i) + "]"));
    }
  } else {
    throw ValidationError("field 'priors' must be a list or the keyword \"equal\"");
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) {
      throw ValidationError("field 'tolerances' must be an object");
    }
    reject_unknown_keys(t, {"state", "prior", "povm", "active", "stationary", "cert"},
                        "tolerances");
    auto read = [&](const char* key) -> std::optional<double> {
      if (!t.contains(key)) return std::nullopt;
      const double v = require_number(t[key], std::string("tolerances.") + key);
      if (!(v > 0.0)) {
        throw ValidationError(std::string("tolerances.") + key + " must be positive");
      }
      return v;
    };
    s.tolerances.state = read("state");
    s.tolerances.prior = read("prior");
    s.tolerances.povm = read("povm");
    s.tolerances.active = read("active");
    s.tolerances.stationary = read("stationary");
    s.tolerances.cert = read("cert");
  }

  s.to_ensemble();  // surface invariant violations at parse time
  return s;
}

std::string serialize_scenario(const Scenario& scenario) {
  detail::ordered_json j;
  j["name"] = scenario.name;
  detail::ordered_json states = detail::ordered_json::array();
  for (const auto& v : scenario.states) {
    detail::ordered_json st;
    st["bloch"] = {v.x, v.y, v.z};
    states.push_back(std::move(st));
  }
  j["states"] = std::move(states);
  if (scenario.equal_priors) {
    j["priors"] = "equal";
  } else {
    j["priors"] = scenario.priors;
  }
  if (scenario.tolerances.any()) {
    detail::ordered_json t;
    if (scenario.tolerances.state) t["state"] = *scenario.tolerances.state;
    if (scenario.tolerances.prior) t["prior"] = *scenario.tolerances.prior;
    if (scenario.tolerances.povm) t["povm"] = *scenario.tolerances.povm;
    if (scenario.tolerances.active) t["active"] = *scenario.tolerances.active;
    if (scenario.tolerances.stationary) {
      t["stationary"] = *scenario.tolerances.stationary;
    }
    if (scenario.tolerances.cert) t["cert"] = *scenario.tolerances.cert;
    j["tolerances"] = std::move(t);
  }
  return detail::dump_json(j);
}

GeneratorKind parse_kind(const std::string& name) {
  if (name == "pair") return GeneratorKind::Pair;
  if (name == "halfplane") return GeneratorKind::Halfplane;
  if (name == "polyhedron") return GeneratorKind::Polyhedron;
  if (name == "random") return GeneratorKind::Random;
  if (name == "fig1a") return GeneratorKind::Fig1a;
  throw UnknownKind("unknown generator kind '" + name + "'");
}

Scenario generate(GeneratorKind kind, const std::vector<double>& params) {
  switch (kind) {
    case GeneratorKind::Pair: return generate_pair(params);
    case GeneratorKind::Halfplane: return generate_halfplane(params);
    case GeneratorKind::Polyhedron: return generate_polyhedron(params);
    case GeneratorKind::Random: return generate_random(params);
    case GeneratorKind::Fig1a: return generate_fig1a(params);
  }
  throw UnknownKind("unknown generator kind");
}

}  // namespace qsd
