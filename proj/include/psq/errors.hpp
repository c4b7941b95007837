#pragma once

#include <stdexcept>
#include <string>

namespace psq {

/// Raised when an operation is called outside its precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when Kleene iteration does not stabilise within its cap.
class StarDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psq
