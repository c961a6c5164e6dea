#include "fuzzylip/monotone.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "fuzzylip/errors.hpp"

namespace fuzzylip {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConstructionError(std::string(what) + " must be positive and finite, got " +
                            std::to_string(v));
  }
}

double eval_piecewise(const PiecewiseLinear& p, double x) {
  const auto& k = p.knots;
  if (x == kInfinity) return k.back().y;
  // First knot with knot.x >= x; at a jump this is the left knot.
  const auto it = std::lower_bound(k.begin(), k.end(), x,
                                   [](const Knot& knot, double v) { return knot.x < v; });
  if (it == k.begin()) return k.front().y;
  if (it == k.end()) return k.back().y;
  const Knot& right = *it;
  const Knot& left = *(it - 1);
  if (x == right.x) return right.y;
  // Each step is a monotone floating-point operation, and the clamp removes
  // rounding overshoot at the segment ends.
  const double v = left.y + (x - left.x) * (right.y - left.y) / (right.x - left.x);
  // Past the left knot of a rising segment the value must not round back to left.y.
  const double lo = right.y > left.y ? std::nextafter(left.y, kInfinity) : left.y;
  return std::clamp(v, lo, right.y);
}

// Keeps phi(x) > 0 for x > 0 when the products underflow.
double above_zero(double v, double x) {
  return x > 0.0 ? std::max(v, std::numeric_limits<double>::denorm_min()) : v;
}

std::uint64_t bits_of(double v) { return std::bit_cast<std::uint64_t>(v); }
double from_bits(std::uint64_t b) { return std::bit_cast<double>(b); }

// Largest double r >= 0 with phi(r) <= y, starting from an estimate. Requires
// phi(0) <= y and phi(+inf) > y. Non-negative doubles order like their bit
// patterns, so the search runs over integers and terminates in ~128 steps.
double refine_adjoint(const MonotoneFunction& phi, double y, double estimate) {
  const std::uint64_t inf_bits = bits_of(kInfinity);
  estimate = std::clamp(estimate, 0.0, std::numeric_limits<double>::max());
  std::uint64_t lo = 0;
  std::uint64_t hi = inf_bits;
  const std::uint64_t guess = bits_of(estimate);
  if (phi(estimate) <= y) {
    lo = guess;
    std::uint64_t step = 1;
    while (true) {
      const std::uint64_t probe = (inf_bits - lo > step) ? lo + step : inf_bits;
      if (phi(from_bits(probe)) > y) {
        hi = probe;
        break;
      }
      lo = probe;
      step *= 2;
    }
  } else {
    hi = guess;
    std::uint64_t step = 1;
    while (true) {
      const std::uint64_t probe = hi > step ? hi - step : 0;
      if (phi(from_bits(probe)) <= y) {
        lo = probe;
        break;
      }
      hi = probe;
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (phi(from_bits(mid)) <= y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return from_bits(lo);
}

double closed_form_estimate(const MonotoneRepresentation& rep, double y) {
  return std::visit(
      Overloaded{
          [y](const Clamp& c) { return c.scale * y; },
          [y](const Linear& l) { return y / l.slope; },
          [y](const RationalSaturating&) { return y / (1.0 - y); },
          [y](const PiecewiseLinear& p) {
            const auto& k = p.knots;
            for (std::size_t i = 0; i + 1 < k.size(); ++i) {
              if (k[i + 1].y <= y) continue;
              if (k[i].x == k[i + 1].x) return k[i].x;
              return k[i].x + (y - k[i].y) * (k[i + 1].x - k[i].x) / (k[i + 1].y - k[i].y);
            }
            return k.back().x;
          },
          [](const CustomMonotone&) { return 0.0; },
      },
      rep);
}

}  // namespace

MonotoneFunction MonotoneFunction::clamp(double scale, double cap) {
  require_positive_finite(scale, "clamp scale");
  require_positive_finite(cap, "clamp cap");
  return MonotoneFunction(Clamp{scale, cap}, cap / scale);
}

MonotoneFunction MonotoneFunction::linear(double slope) {
  require_positive_finite(slope, "linear slope");
  return MonotoneFunction(Linear{slope}, kInfinity);
}

MonotoneFunction MonotoneFunction::piecewise_linear(std::vector<Knot> knots) {
  if (knots.empty()) throw ConstructionError("piecewise-linear function needs at least one knot");
  if (knots.front().x != 0.0) throw ConstructionError("first knot must sit at x = 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Knot& k = knots[i];
    if (!std::isfinite(k.x) || !std::isfinite(k.y) || k.y < 0.0) {
      throw ConstructionError("knot " + std::to_string(i) + " must be finite with y >= 0");
    }
    if (i == 0) continue;
    const Knot& prev = knots[i - 1];
    if (k.x < prev.x || k.y < prev.y) {
      throw ConstructionError("knots must be non-decreasing in x and y (knot " +
                              std::to_string(i) + ")");
    }
    if (i >= 2 && k.x == prev.x && prev.x == knots[i - 2].x) {
      throw ConstructionError("at most two knots may share an x coordinate");
    }
  }
  const double sup = knots.back().y;
  return MonotoneFunction(PiecewiseLinear{std::move(knots)}, sup);
}

MonotoneFunction MonotoneFunction::rational_saturating() {
  return MonotoneFunction(RationalSaturating{}, 1.0);
}

MonotoneFunction MonotoneFunction::custom(std::function<double(double)> fn, double sup_value,
                                          bool left_continuous, std::string label) {
  if (!fn) throw ConstructionError("custom monotone function needs an evaluator");
  if (std::isnan(sup_value) || sup_value < 0.0) {
    throw ConstructionError("custom monotone function needs sup_value in [0, +inf]");
  }
  return MonotoneFunction(
      CustomMonotone{std::move(fn), sup_value, left_continuous, std::move(label)}, sup_value);
}

double MonotoneFunction::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("monotone function evaluated at negative argument " + std::to_string(x));
  }
  if (x == kInfinity) return sup_;
  return std::visit(Overloaded{
                        [x](const Clamp& c) { return above_zero(std::min(x, c.cap) / c.scale, x); },
                        [x](const Linear& l) { return above_zero(l.slope * x, x); },
                        // 1 / (1 + 1/x) is a chain of monotone roundings, unlike x / (x + 1).
                        [x](const RationalSaturating&) { return above_zero(1.0 / (1.0 + 1.0 / x), x); },
                        [x](const PiecewiseLinear& p) { return eval_piecewise(p, x); },
                        [x](const CustomMonotone& c) { return c.fn(x); },
                    },
                    rep_);
}

bool MonotoneFunction::is_left_continuous() const noexcept {
  if (const auto* c = std::get_if<CustomMonotone>(&rep_)) return c->left_continuous;
  return true;
}

bool MonotoneFunction::has_closed_form_adjoint() const noexcept {
  return !std::holds_alternative<CustomMonotone>(rep_);
}

std::string_view MonotoneFunction::kind_name() const noexcept {
  return std::visit(Overloaded{
                        [](const Clamp&) -> std::string_view { return "clamp"; },
                        [](const Linear&) -> std::string_view { return "linear"; },
                        [](const PiecewiseLinear&) -> std::string_view {
                          return "piecewise_linear";
                        },
                        [](const RationalSaturating&) -> std::string_view {
                          return "rational_saturating";
                        },
                        [](const CustomMonotone&) -> std::string_view { return "custom"; },
                    },
                    rep_);
}

ExtendedNonNegative right_adjoint_eval(const MonotoneFunction& phi, ExtendedNonNegative y,
                                       const BisectionOptions& options) {
  if (!phi.has_closed_form_adjoint()) return right_adjoint_bisect(phi, y, options);
  const double yv = y.value();
  if (y >= phi.sup_value()) return ExtendedNonNegative::infinity();
  if (phi(0.0) > yv) return ExtendedNonNegative(0.0);
  const double estimate = closed_form_estimate(phi.representation(), yv);
  return ExtendedNonNegative(refine_adjoint(phi, yv, std::isfinite(estimate) ? estimate : 0.0));
}

ExtendedNonNegative right_adjoint_bisect(const MonotoneFunction& phi, ExtendedNonNegative y,
                                         const BisectionOptions& options) {
  const double yv = y.value();
  if (y >= phi.sup_value()) return ExtendedNonNegative::infinity();
  if (phi(0.0) > yv) return ExtendedNonNegative(0.0);

  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (phi(hi) <= yv) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > options.max_doublings || !std::isfinite(hi)) {
      throw NumericError("right adjoint: no finite upper bracket found", lo, hi);
    }
  }
  for (int it = 0; it < options.max_iterations; ++it) {
    if (hi - lo <= options.tolerance * std::max(1.0, hi)) return ExtendedNonNegative(lo);
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) return ExtendedNonNegative(lo);
    if (phi(mid) <= yv) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NumericError("right adjoint: tolerance not reached within the iteration cap", lo, hi);
}

MonotoneFunction left_continuous_envelope(const MonotoneFunction& phi) {
  return std::visit(
      Overloaded{
          [&](const PiecewiseLinear& p) {
            if (p.knots.front().y == 0.0) return phi;
            std::vector<Knot> knots;
            knots.reserve(p.knots.size() + 1);
            knots.push_back({0.0, 0.0});
            knots.insert(knots.end(), p.knots.begin(), p.knots.end());
            return MonotoneFunction::piecewise_linear(std::move(knots));
          },
          [&](const CustomMonotone& c) {
            if (c.left_continuous && phi(0.0) == 0.0) return phi;
            auto inner = c.fn;
            std::function<double(double)> fn;
            if (c.left_continuous) {
              fn = [inner](double x) { return x == 0.0 ? 0.0 : inner(x); };
            } else {
              // Over the doubles, sup{phi(y) : y < x} is attained at the predecessor of x.
              fn = [inner](double x) { return x == 0.0 ? 0.0 : inner(std::nextafter(x, 0.0)); };
            }
            return MonotoneFunction::custom(std::move(fn), c.sup_value, true,
                                            "envelope(" + c.label + ")");
          },
          // Continuous presets with phi(0) = 0 are their own envelope.
          [&](const auto&) { return phi; },
      },
      phi.representation());
}

GaloisReport check_galois(const MonotoneFunction& phi, std::span<const double> grid,
                          double tolerance) {
  GaloisReport report;
  report.unit_law.reserve(grid.size());
  for (double x : grid) {
    const double composed = right_adjoint_eval(phi, phi.eval(ExtendedNonNegative(x))).value();
    const bool pass = x <= composed;
    if (!pass) report.worst_violation = std::max(report.worst_violation, x - composed);
    report.passed = report.passed && pass;
    report.unit_law.push_back({x, composed, pass});
  }

  report.counit_applicable = phi.is_left_continuous() && phi(0.0) == 0.0;
  if (!report.counit_applicable) return report;
  report.counit_law.reserve(grid.size());
  for (double y : grid) {
    const double composed = phi.eval(right_adjoint_eval(phi, ExtendedNonNegative(y))).value();
    const bool pass = composed <= y + tolerance;
    if (!pass) report.worst_violation = std::max(report.worst_violation, composed - y);
    report.passed = report.passed && pass;
    report.counit_law.push_back({y, composed, pass});
  }
  return report;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) {
    throw DomainError("log_grid: need 0 < lo <= hi and n >= 1");
  }
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace fuzzylip
