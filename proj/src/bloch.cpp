#include "qsd/bloch.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace qsd {

namespace {

std::string describe(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

BlochVector::BlochVector(double px, double py, double pz) : x(px), y(py), z(pz) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw ValidationError("BlochVector components must be finite");
  }
}

double BlochVector::norm() const { return std::sqrt(norm2()); }

BlochVector operator+(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

BlochVector operator-(const BlochVector& a) { return {-a.x, -a.y, -a.z}; }

BlochVector operator*(double s, const BlochVector& v) {
  return {s * v.x, s * v.y, s * v.z};
}

BlochVector operator/(const BlochVector& v, double s) {
  return {v.x / s, v.y / s, v.z / s};
}

double dot(const BlochVector& a, const BlochVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

QubitState::QubitState(const BlochVector& bloch, double tol_state) : bloch_(bloch) {
  const double n = bloch_.norm();
  if (n > 1.0 + tol_state) {
    throw ValidationError("Bloch vector norm " + describe(n) +
                          " exceeds 1 beyond the allowed tolerance " +
                          describe(tol_state));
  }
  if (n > 1.0) {
    bloch_ = (1.0 / n) * bloch_;  // snap near-unit vectors onto the sphere
  }
}

Ensemble::Ensemble(std::vector<QubitState> states, std::vector<double> priors,
                   double tol_prior) {
  if (states.size() != priors.size()) {
    throw ValidationError("ensemble needs one prior per state");
  }
  if (states.empty()) {
    throw ValidationError("ensemble must contain at least one state");
  }
  double sum = 0.0;
  for (double q : priors) {
    if (!std::isfinite(q)) throw ValidationError("priors must be finite");
    if (q < 0.0) throw ValidationError("priors must be nonnegative");
    sum += q;
  }
  if (std::abs(sum - 1.0) > tol_prior) {
    throw ValidationError("priors sum to " + describe(sum) +
                          ", expected 1 within " + describe(tol_prior));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (priors[i] == 0.0) {
      dropped_.push_back(i);
      continue;
    }
    states_.push_back(states[i]);
    priors_.push_back(priors[i]);
    original_index_.push_back(i);
  }
  equal_priors_ = true;
  for (double q : priors_) {
    if (q != priors_.front()) {
      equal_priors_ = false;
      break;
    }
  }
}

Ensemble Ensemble::with_equal_priors(std::vector<QubitState> states) {
  if (states.empty()) {
    throw ValidationError("ensemble must contain at least one state");
  }
  Ensemble e;
  const double q = 1.0 / static_cast<double>(states.size());
  e.priors_.assign(states.size(), q);
  e.states_ = std::move(states);
  e.original_index_.resize(e.states_.size());
  for (std::size_t i = 0; i < e.original_index_.size(); ++i) e.original_index_[i] = i;
  e.equal_priors_ = true;
  return e;
}

double HermitianOp::min_eig() const { return 0.5 * (t - a.norm()); }

double HermitianOp::max_eig() const { return 0.5 * (t + a.norm()); }

HermitianOp weighted_difference(double q1, const QubitState& s1, double q2,
                                const QubitState& s2) {
  if (!std::isfinite(q1) || !std::isfinite(q2)) {
    throw ValidationError("weights must be finite");
  }
  return {q1 - q2, q1 * s1.bloch() - q2 * s2.bloch()};
}

double trace_norm(const HermitianOp& op) {
  const double n = op.a.norm();
  return 0.5 * std::abs(op.t + n) + 0.5 * std::abs(op.t - n);
}

double min_eig(const HermitianOp& op) { return op.min_eig(); }

PovmElement::PovmElement(double weight, const BlochVector& direction, double tol)
    : m(weight), w(direction) {
  if (!std::isfinite(m) || m < 0.0) {
    throw ValidationError("POVM element weight must be finite and nonnegative");
  }
  if (m == 0.0) {
    w = BlochVector{};  // direction is meaningless for a null outcome
    return;
  }
  const double n = w.norm();
  // Rank-one element (unit direction) or a multiple of the identity (w = 0).
  if (std::abs(n - 1.0) > tol && n > tol) {
    throw ValidationError("POVM direction must be a unit vector or zero, got norm " +
                          describe(n));
  }
}

double born_probability(const PovmElement& e, const QubitState& s) {
  return 0.5 * e.m * (1.0 + dot(e.w, s.bloch()));
}

Povm::Povm(std::vector<PovmElement> elements, double tol_povm)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("POVM must have at least one element");
  if (trace_residual() > tol_povm || direction_residual() > tol_povm) {
    throw IncompletePovm("POVM completeness violated: |sum m - 2| = " +
                         describe(trace_residual()) + ", norm(sum m w) = " +
                         describe(direction_residual()));
  }
}

Povm Povm::unchecked(std::vector<PovmElement> elements) {
  Povm p;
  p.elements_ = std::move(elements);
  return p;
}

double Povm::trace_residual() const {
  double sum = 0.0;
  for (const auto& e : elements_) sum += e.m;
  return std::abs(sum - 2.0);
}

double Povm::direction_residual() const {
  BlochVector s;
  for (const auto& e : elements_) s = s + e.m * e.w;
  return s.norm();
}

}  // namespace qsd
