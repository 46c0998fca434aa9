#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed domain objects: non-finite numbers, priors off the simplex,
// Bloch vectors outside the ball, inconsistent lengths.
struct ValidationError : Error {
  using Error::Error;
};

// Structurally broken scenario text (not valid JSON / wrong shape).
struct ParseError : Error {
  using Error::Error;
};

struct InvalidInstance : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct InfeasibleWeights : Error {
  using Error::Error;
};

struct InfeasibleCertificate : Error {
  using Error::Error;
};

// Internal guard: a returned solution failed its own optimality check.
struct CertificateFailure : Error {
  using Error::Error;
};

struct PriorMismatch : Error {
  using Error::Error;
};

struct WrongArity : Error {
  using Error::Error;
};

struct IncompletePovm : Error {
  using Error::Error;
};

struct UnknownKind : Error {
  using Error::Error;
};

struct BadParams : Error {
  using Error::Error;
};

}  // namespace qsd
