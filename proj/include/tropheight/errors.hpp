#pragma once

#include <stdexcept>
#include <string>

namespace tropheight {

// Malformed input: bad JSON, non-prime modulus, singular matrix, ...
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but outside the domain an operation supports
// (additive reduction, non-minimal model, wrong rank, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The finite Fourier term list could not certify a minimum.
class InsufficientTerms : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrincipallyPolarizedData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies on the theta divisor to working precision.
class OnDivisor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precision or resource budget exhausted (p-adic digits, AGM, big integers).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that holds as a theorem failed; always a bug.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tropheight
