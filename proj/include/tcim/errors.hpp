#pragma once

#include <stdexcept>
#include <string>

namespace tcim {

// Base type for all failures raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad bytes in an input stream; the message carries a 1-based line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid user-supplied configuration (slice size, capacity, cost table, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A broken internal contract, e.g. an AND issued on a slice that is not
// resident in the simulated array. Indicates a caller bug, not bad input.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Input too large for the requested dense representation.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A guard refused to run an intentionally size-limited routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcim
