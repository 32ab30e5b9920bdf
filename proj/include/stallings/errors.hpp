#pragma once

#include <stdexcept>
#include <string>

namespace stallings {

// Malformed words, out-of-range letters, alphabet mismatches, bad arguments.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The caller broke a documented precondition (e.g. h not contained in k).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A configured cap (vertices, partitions, search states, layers) was hit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stallings
