#pragma once

#include <stdexcept>
#include <string>

namespace oto {

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad instance, bad pattern, bad file, bad flag combination.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A pattern names a link whose coefficient is zero.
class InvalidPattern : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A link rate was requested for a zero coefficient.
class UndefinedLink : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An enumeration would exceed its configured cap.
class CapacityLimit : public Error {
 public:
  CapacityLimit(const std::string& what, long long cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  long long cap() const noexcept { return cap_; }

 private:
  long long cap_;
};

// Diagonal dominance fails where a bound needs it.
class DominanceViolated : public Error {
 public:
  DominanceViolated(const std::string& what, double rho) : Error(what), rho_(rho) {}
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

// Instance has no links where a bound needs at least one.
class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

// LP solver or factorization failed; carries diagnostics in the message.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// A proven inequality was observed to fail: always an implementation bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace oto
