#pragma once

#include <stdexcept>
#include <string>

namespace crmhe {

// Base of every error thrown by the library. Callers that only care about
// "did it work" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid distribution parameters, alpha outside (0,2)\{1}, p outside (0,1),
// evaluation points outside the admissible region.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The survival-power integral does not converge for the requested parameters.
class DivergentEntropy : public Error {
 public:
  using Error::Error;
};

// Sample with zero spread; no bandwidth can be formed.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

// Kernel survival at the truncation time is (numerically) zero.
class TruncationBeyondSupport : public Error {
 public:
  using Error::Error;
};

// Maximum-likelihood fit failed to converge or the likelihood is degenerate.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace crmhe
