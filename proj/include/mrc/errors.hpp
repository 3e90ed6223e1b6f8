#pragma once

#include <stdexcept>
#include <string>

namespace mrc {

/// Caller passed arguments that violate a shape or type contract.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition (rank, invertibility, hypothesis) does not hold.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what, int hypothesis = 0)
      : std::domain_error(what), hypothesis_(hypothesis) {}

  /// 1-based index of the failing completion-lemma hypothesis, 0 if not applicable.
  int hypothesis() const noexcept { return hypothesis_; }

 private:
  int hypothesis_;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// A construction invariant that should hold by theory was found broken.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mrc
