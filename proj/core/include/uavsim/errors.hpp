#pragma once

#include <stdexcept>
#include <string>

namespace uavsim {

// Base for every error the library raises. The CLI maps each subclass to a
// distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (field, fleet, sweep axes, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a numeric function (v <= 0, NaN input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A state that should be unreachable, e.g. two simultaneous ball holders.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavsim
