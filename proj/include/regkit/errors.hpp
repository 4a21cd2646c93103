#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regkit {

// Malformed surface or s-expression input. `position` is a 0-based
// character offset into the input text.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t position)
      : std::runtime_error(std::move(message)), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// A certificate failed to re-check: out-of-range reference, detachment
// mismatch, or a transformer precondition violation.
class ProofError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A required acceptance record does not hold under the given regulator
// (missing fixed-point record, unsound classifier branch, rejected LEM
// commitment).
class AcceptanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A frame operation was invoked with a regulator that fails its probe
// preconditions.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace regkit
