#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "fuzzylip/errors.hpp"

namespace fuzzylip {

/// A value in [0, +inf]. Addition saturates at +inf; the product 0 * inf is
/// never formed and raises NumericError instead.
class ExtendedNonNegative {
 public:
  constexpr ExtendedNonNegative() = default;

  /// Accepts any non-negative double, including +inf. Negative or NaN input
  /// is a DomainError.
  explicit ExtendedNonNegative(double value) : value_(value) {
    if (std::isnan(value) || value < 0.0) {
      throw DomainError("ExtendedNonNegative: value must lie in [0, +inf], got " +
                        std::to_string(value));
    }
  }

  static constexpr ExtendedNonNegative infinity() noexcept {
    ExtendedNonNegative v;
    v.value_ = std::numeric_limits<double>::infinity();
    return v;
  }

  constexpr bool is_infinite() const noexcept {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_finite() const noexcept { return !is_infinite(); }

  /// The value as a double; +inf maps to std::numeric_limits<double>::infinity().
  constexpr double value() const noexcept { return value_; }

  friend constexpr ExtendedNonNegative operator+(ExtendedNonNegative a,
                                                 ExtendedNonNegative b) noexcept {
    ExtendedNonNegative r;
    r.value_ = a.value_ + b.value_;
    return r;
  }

  ExtendedNonNegative& operator+=(ExtendedNonNegative other) noexcept {
    value_ += other.value_;
    return *this;
  }

  friend ExtendedNonNegative operator*(ExtendedNonNegative a, ExtendedNonNegative b) {
    if ((a.value_ == 0.0 && b.is_infinite()) || (b.value_ == 0.0 && a.is_infinite())) {
      throw NumericError("ExtendedNonNegative: 0 * inf is undefined");
    }
    ExtendedNonNegative r;
    r.value_ = a.value_ * b.value_;
    return r;
  }

  friend constexpr auto operator<=>(ExtendedNonNegative a, ExtendedNonNegative b) noexcept {
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(ExtendedNonNegative a, ExtendedNonNegative b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  double value_ = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace fuzzylip
