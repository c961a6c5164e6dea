#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzylip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative distance,
/// membership outside [0,1], t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not converge, or an undefined form (0 * inf)
/// would have been produced.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double lo = 0.0, double hi = 0.0)
      : Error(what), lo_(lo), hi_(hi) {}

  /// Bracketing interval reached before giving up.
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// A membership value 1 - phi(|x-y|) g(t) fell outside [0,1].
class InvalidMetricError : public Error {
 public:
  InvalidMetricError(const std::string& what, double x, double y, double t)
      : Error(what), x_(x), y_(y), t_(t) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double t() const noexcept { return t_; }

 private:
  double x_;
  double y_;
  double t_;
};

/// Malformed construction input (bad breakpoints, invalid metric matrix, h <= k, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The sampled map is not fuzzy Lipschitz: two points at membership 1 carry
/// different values.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// A precondition of an extension formula does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Every term of a McShane/Whitney sup/inf is infinite for the query point.
class ExtensionUndefinedError : public Error {
 public:
  ExtensionUndefinedError(const std::string& what, std::size_t query)
      : Error(what), query_(query) {}

  std::size_t query() const noexcept { return query_; }

 private:
  std::size_t query_;
};

}  // namespace fuzzylip
