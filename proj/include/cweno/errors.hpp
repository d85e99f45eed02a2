#pragma once

#include <stdexcept>
#include <string>

namespace cweno {

/// Thrown when an argument falls outside an operation's documented domain.
class RejectedInput : public std::invalid_argument {
 public:
  explicit RejectedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a state violates an invariant the scheme relies on, e.g. a cell
/// average outside the limiter bounds after a step that breached the CFL limit.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cweno
