#pragma once

#include <stdexcept>
#include <string>

namespace stein {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-unit vector, bad
/// dimension, parameter out of range, malformed input file).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A linear system the estimator depends on is singular or too badly
/// conditioned to trust. `which()` names the matrix that failed.
class SingularSystem : public Error {
 public:
  SingularSystem(std::string which, double condition)
      : Error("singular system (" + which + "), condition estimate " +
              std::to_string(condition)),
        which_(std::move(which)),
        condition_(condition) {}

  const std::string& which() const noexcept { return which_; }
  double condition() const noexcept { return condition_; }

 private:
  std::string which_;
  double condition_;
};

/// The sample mean vector vanishes, so no mean direction exists.
class DegenerateMean : public Error {
 public:
  using Error::Error;
};

/// Neither branch of the Watson selection rule produced an estimate whose
/// sign agrees with its axis.
class NotEligible : public Error {
 public:
  using Error::Error;
};

/// An iterative routine hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling stalled (acceptance rate below the configured floor).
class SamplerError : public Error {
 public:
  using Error::Error;
};

}  // namespace stein
