#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzylip/extended.hpp"

namespace fuzzylip {

/// x -> min(x, cap) / scale.
struct Clamp {
  double scale;
  double cap;
};

/// x -> slope * x. Unbounded, so never metric-generating.
struct Linear {
  double slope;
};

struct Knot {
  double x;
  double y;
};

/// Linear interpolation between knots, constant after the last knot.
///
/// The first knot sits at x = 0. Two consecutive knots with the same x encode
/// a jump; the function takes the first (left) value at the jump location,
/// so every piecewise-linear function is left-continuous by construction.
struct PiecewiseLinear {
  std::vector<Knot> knots;
};

/// x -> x / (x + 1), with supremum 1 reached only at +inf.
struct RationalSaturating {};

/// Any non-decreasing evaluator. The adjoint falls back to bisection.
struct CustomMonotone {
  std::function<double(double)> fn;
  double sup_value;
  bool left_continuous;
  std::string label;
};

using MonotoneRepresentation =
    std::variant<Clamp, Linear, PiecewiseLinear, RationalSaturating, CustomMonotone>;

/// A non-decreasing map [0, +inf] -> [0, +inf]. Immutable after construction.
class MonotoneFunction {
 public:
  static MonotoneFunction clamp(double scale, double cap);
  static MonotoneFunction linear(double slope);
  static MonotoneFunction piecewise_linear(std::vector<Knot> knots);
  static MonotoneFunction rational_saturating();
  /// `fn` must be non-decreasing on [0, +inf) and bounded by `sup_value`.
  static MonotoneFunction custom(std::function<double(double)> fn, double sup_value,
                                 bool left_continuous, std::string label = "custom");

  /// Value at x in [0, +inf]; at +inf this is sup_value(). DomainError for x < 0.
  double operator()(double x) const;
  ExtendedNonNegative eval(ExtendedNonNegative x) const {
    return ExtendedNonNegative((*this)(x.value()));
  }

  /// phi(+inf), the supremum over the whole domain.
  ExtendedNonNegative sup_value() const noexcept { return ExtendedNonNegative(sup_); }

  bool is_left_continuous() const noexcept;
  /// True for the preset representations, whose adjoint has a closed form.
  bool has_closed_form_adjoint() const noexcept;
  std::string_view kind_name() const noexcept;

  const MonotoneRepresentation& representation() const noexcept { return rep_; }

 private:
  MonotoneFunction(MonotoneRepresentation rep, double sup) : rep_(std::move(rep)), sup_(sup) {}

  MonotoneRepresentation rep_;
  double sup_;
};

struct BisectionOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Bound on doublings of the upper bracket end before giving up.
  int max_doublings = 2000;
};

/// phi*(y) = sup{x in [0,+inf] : phi(x) <= y}, with sup of the empty set = 0.
///
/// Presets use their closed form, refined to the largest double r with
/// phi(r) <= y, so both Galois inequalities hold exactly in floating point.
/// Custom evaluators go through right_adjoint_bisect.
ExtendedNonNegative right_adjoint_eval(const MonotoneFunction& phi, ExtendedNonNegative y,
                                       const BisectionOptions& options = {});

/// Bisection for phi* using only evaluations of phi. Returns the lower end of
/// the final bracket, so phi(result) <= y always holds. Throws NumericError
/// carrying the bracket when the iteration cap is hit.
ExtendedNonNegative right_adjoint_bisect(const MonotoneFunction& phi, ExtendedNonNegative y,
                                         const BisectionOptions& options = {});

/// x -> sup{phi(y) : y < x}. Left-continuous, zero at 0, idempotent.
MonotoneFunction left_continuous_envelope(const MonotoneFunction& phi);

struct GaloisEntry {
  double point;
  double composed;
  bool pass;
};

struct GaloisReport {
  /// x <= phi*(phi(x)) per grid point; checked exactly.
  std::vector<GaloisEntry> unit_law;
  /// phi(phi*(y)) <= y + tolerance per grid point; only when applicable.
  std::vector<GaloisEntry> counit_law;
  /// The counit law needs phi left-continuous with phi(0) = 0.
  bool counit_applicable = false;
  bool passed = true;
  double worst_violation = 0.0;
};

GaloisReport check_galois(const MonotoneFunction& phi, std::span<const double> grid,
                          double tolerance = 1e-9);

/// n points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace fuzzylip
