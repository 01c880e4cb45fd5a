#pragma once

#include <stdexcept>
#include <string>

namespace belyi {

// A caller-supplied value violates a stated precondition or hypothesis.
// The CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug or inconsistent input data
// that slipped past validation. The CLI maps this to exit code 1.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Requested computation exceeds a configured desk-scale guard.
class GuardError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Malformed textual input; carries the offending position.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : PreconditionError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline void require(bool cond, const std::string& message) {
  if (!cond) throw PreconditionError(message);
}

inline void ensure(bool cond, const std::string& message) {
  if (!cond) throw InternalError(message);
}

}  // namespace belyi
