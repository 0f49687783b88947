#pragma once

#include <stdexcept>
#include <string>

namespace montest {

/// Base of every error raised by the library. Domain errors (a monotone
/// function handed to the witness builder, an empty far family) and input
/// errors (malformed literal, dimension out of range) are distinguished by
/// subtype so the CLI can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed literal, bound violated, mismatched dimensions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Exhaustive methods refuse dimensions beyond their cap.
class UnsupportedSize : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The operation needs at least one 10-edge.
class NoViolations : public Error {
 public:
  using Error::Error;
};

/// Objective and optimizer are undefined without far functions.
class EmptyFamily : public Error {
 public:
  using Error::Error;
};

class NotInFamily : public Error {
 public:
  using Error::Error;
};

/// Two evaluation routes of the same quantity disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace montest
