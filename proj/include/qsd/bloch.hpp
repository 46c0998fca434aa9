#pragma once

#include <cstddef>
#include <vector>

#include "qsd/errors.hpp"

namespace qsd {

// Tolerance knobs shared across the library. Every check that takes a
// tolerance defaults to the value stored here.
struct Tolerances {
  double state = 1e-12;       // Bloch-norm excess tolerated before rejection
  double prior = 1e-12;       // slack on sum(priors) == 1
  double povm = 1e-9;         // POVM completeness slack
  double active = 1e-8;       // band for support / active-set membership
  double stationary = 1e-10;  // stationarity residual required of solvers
  double cert = 1e-8;         // certificate residual bound
};

// Point in (or near) the unit ball of R^3. Components must be finite;
// construction rejects NaN/Inf so downstream geometry never sees them.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  BlochVector() = default;
  BlochVector(double px, double py, double pz);

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const;
};

BlochVector operator+(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a);
BlochVector operator*(double s, const BlochVector& v);
BlochVector operator/(const BlochVector& v, double s);
double dot(const BlochVector& a, const BlochVector& b);

// Qubit density operator (I + v.sigma)/2 stored by its Bloch vector v.
// norm(v) <= 1 is kept as-is; an excess up to tol_state is renormalized to
// the sphere; anything larger is rejected.
class QubitState {
 public:
  explicit QubitState(const BlochVector& bloch, double tol_state = Tolerances{}.state);

  const BlochVector& bloch() const { return bloch_; }
  double purity() const { return bloch_.norm(); }

 private:
  BlochVector bloch_;
};

// Finite ensemble {q_x, rho_x}. Priors are nonnegative and sum to one
// within tol_prior. Entries with prior exactly zero are dropped at
// construction; their original positions are kept for diagnostics.
class Ensemble {
 public:
  Ensemble(std::vector<QubitState> states, std::vector<double> priors,
           double tol_prior = Tolerances{}.prior);

  // Uniform priors 1/N, flagged exactly equal (no rounding concerns).
  static Ensemble with_equal_priors(std::vector<QubitState> states);

  std::size_t size() const { return states_.size(); }
  const std::vector<QubitState>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  const QubitState& state(std::size_t i) const { return states_[i]; }
  double prior(std::size_t i) const { return priors_[i]; }

  bool has_equal_priors() const { return equal_priors_; }

  // Original input index of kept state i (identity when nothing was dropped).
  std::size_t original_index(std::size_t i) const { return original_index_[i]; }
  std::size_t original_size() const { return states_.size() + dropped_.size(); }
  const std::vector<std::size_t>& dropped_zero_priors() const { return dropped_; }

 private:
  Ensemble() = default;

  std::vector<QubitState> states_;
  std::vector<double> priors_;
  std::vector<std::size_t> original_index_;
  std::vector<std::size_t> dropped_;
  bool equal_priors_ = false;
};

// Hermitian 2x2 operator (t*I + a.sigma)/2: trace t, eigenvalues
// (t +- norm(a))/2. This is the only operator representation the core
// library uses; explicit complex matrices live in the oracles.
struct HermitianOp {
  double t = 0.0;
  BlochVector a;

  double min_eig() const;
  double max_eig() const;
};

// q1*rho1 - q2*rho2 as a HermitianOp.
HermitianOp weighted_difference(double q1, const QubitState& s1, double q2,
                                const QubitState& s2);

// Sum of absolute eigenvalues: |t + norm(a)|/2 + |t - norm(a)|/2.
double trace_norm(const HermitianOp& op);

double min_eig(const HermitianOp& op);

// Single POVM element m*(I + w.sigma)/2. Outcomes are rank-one (norm(w)=1)
// or null (m=0); w=0 with m>0 encodes a multiple of the identity, which is
// what the deterministic-guess outcome of a degenerate instance needs.
struct PovmElement {
  double m = 0.0;
  BlochVector w;

  PovmElement() = default;
  PovmElement(double weight, const BlochVector& direction,
              double tol = Tolerances{}.povm);
};

double born_probability(const PovmElement& e, const QubitState& s);

// Complete measurement: sum m_x = 2 and sum m_x w_x = 0 within tol_povm.
class Povm {
 public:
  explicit Povm(std::vector<PovmElement> elements, double tol_povm = Tolerances{}.povm);

  // Skips the completeness check; used to build probe measurements that
  // verifiers are expected to reject.
  static Povm unchecked(std::vector<PovmElement> elements);

  std::size_t size() const { return elements_.size(); }
  const std::vector<PovmElement>& elements() const { return elements_; }
  const PovmElement& element(std::size_t i) const { return elements_[i]; }

  // |sum m_x - 2|
  double trace_residual() const;
  // norm(sum m_x w_x)
  double direction_residual() const;

 private:
  Povm() = default;
  std::vector<PovmElement> elements_;
};

}  // namespace qsd
