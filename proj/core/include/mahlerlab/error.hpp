#ifndef MAHLERLAB_ERROR_HPP
#define MAHLERLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mahlerlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (e.g. precision below 32 bits).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The argument lies outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request would exceed a configured resource limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An iterative method gave up. Carries the best estimate it had, as a
/// decimal string so this header stays free of the numeric types.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, std::string best_estimate)
      : Error(what), best_estimate_(std::move(best_estimate)) {}

  const std::string& best_estimate() const noexcept { return best_estimate_; }

 private:
  std::string best_estimate_;
};

/// An integrand produced NaN. `abscissa` is the offending point.
class IntegrandError : public Error {
 public:
  IntegrandError(const std::string& what, std::string abscissa)
      : Error(what), abscissa_(std::move(abscissa)) {}

  const std::string& abscissa() const noexcept { return abscissa_; }

 private:
  std::string abscissa_;
};

/// The completed L-function failed its symmetry test.
class FunctionalEquationViolation : public Error {
 public:
  FunctionalEquationViolation(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}

  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

/// A value that must be integral (or rational with a known denominator) was not.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Unknown identifier; `suggestions` lists close matches.
class NotFound : public Error {
 public:
  NotFound(const std::string& what, std::vector<std::string> suggestions)
      : Error(what), suggestions_(std::move(suggestions)) {}

  const std::vector<std::string>& suggestions() const noexcept { return suggestions_; }

 private:
  std::vector<std::string> suggestions_;
};

}  // namespace mahlerlab

#endif  // MAHLERLAB_ERROR_HPP
