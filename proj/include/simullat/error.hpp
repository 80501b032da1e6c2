#pragma once

#include <stdexcept>
#include <string>

namespace simullat {

// Base class for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters (tau <= 0, group_size < 1, bad ranges).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent trace / alignment data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A metric that cannot be evaluated on a session's timeline
// (e.g. Start Offset on a unit-step trace). The CLI skips these.
class IncompatibleError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace simullat
