#pragma once

#include <stdexcept>

namespace rsbf {

// A caller-supplied parameter violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serialized bytes that are truncated, corrupt, or from another format version.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsbf
