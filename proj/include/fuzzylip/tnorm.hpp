#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzylip {

enum class TNormKind { minimum, product, lukasiewicz };

/// A continuous triangular norm on [0,1].
class TNorm {
 public:
  constexpr explicit TNorm(TNormKind kind = TNormKind::minimum) noexcept : kind_(kind) {}

  static constexpr TNorm minimum() noexcept { return TNorm(TNormKind::minimum); }
  static constexpr TNorm product() noexcept { return TNorm(TNormKind::product); }
  static constexpr TNorm lukasiewicz() noexcept { return TNorm(TNormKind::lukasiewicz); }

  /// Parses the configuration tags "min", "prod" and "luk".
  static TNorm from_tag(std::string_view tag);

  constexpr TNormKind kind() const noexcept { return kind_; }
  std::string_view tag() const noexcept;
  std::string_view name() const noexcept;

  /// Throws DomainError when a or b is outside [0,1].
  double apply(double a, double b) const;
  double operator()(double a, double b) const { return apply(a, b); }

  friend constexpr bool operator==(TNorm, TNorm) = default;

 private:
  TNormKind kind_;
};

using UnitPair = std::pair<double, double>;

/// All pairs (i/(n-1), j/(n-1)) for i, j in [0, n). n = 101 gives the 1/100 grid.
std::vector<UnitPair> uniform_unit_grid(std::size_t n);

/// True iff first(a,b) >= second(a,b) at every grid pair. A false result is a
/// proof of non-dominance; a true result only certifies the sampled pairs.
bool dominates(const TNorm& first, const TNorm& second, std::span<const UnitPair> grid);

}  // namespace fuzzylip
