#pragma once

#include <stdexcept>
#include <string>

namespace gldp {

// Base of every error raised by the library. The CLI maps subclasses onto
// its exit-code contract (2 = domain/validation, 3 = capacity).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or structurally inconsistent arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The exact algorithm would exceed its documented size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// The g^eps search found no admissible epsilon on its grid.
class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

// Rejection sampling accepted too few graphs to report statistics.
class InsufficientConditioning : public Error {
 public:
  InsufficientConditioning(const std::string& what, double acceptance_rate)
      : Error(what), acceptance_rate_(acceptance_rate) {}

  double acceptance_rate() const noexcept { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

}  // namespace gldp
