#pragma once

#include <stdexcept>
#include <string>

namespace zbases {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction's exhaustive self-check failed. Indicates a bug or an
/// inadmissible parameter that slipped past the preconditions.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// No quadratic nonresidue mod p avoids the three excluded residues.
class NoAdmissibleNonresidue : public Error {
 public:
  using Error::Error;
};

/// Strict pipeline policy and the prime window is empty.
class NoPrimeInWindow : public Error {
 public:
  using Error::Error;
};

/// Adaptive pipeline policy exhausted its eps cap, or m is too small.
class ConstructionInfeasible : public Error {
 public:
  using Error::Error;
};

/// Exact search refused (modulus over limit) or ran out of node budget.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed set file, certificate, or rational literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace zbases
