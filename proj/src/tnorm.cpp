#include "fuzzylip/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzylip/errors.hpp"

namespace fuzzylip {

namespace {

void require_unit(double v, const char* which) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string("t-norm argument ") + which + " outside [0,1]: " +
                      std::to_string(v));
  }
}

}  // namespace

TNorm TNorm::from_tag(std::string_view tag) {
  if (tag == "min") return minimum();
  if (tag == "prod") return product();
  if (tag == "luk") return lukasiewicz();
  throw DomainError("unknown t-norm tag '" + std::string(tag) + "' (expected min, prod or luk)");
}

std::string_view TNorm::tag() const noexcept {
  switch (kind_) {
    case TNormKind::minimum: return "min";
    case TNormKind::product: return "prod";
    case TNormKind::lukasiewicz: return "luk";
  }
  return "min";
}

std::string_view TNorm::name() const noexcept {
  switch (kind_) {
    case TNormKind::minimum: return "minimum";
    case TNormKind::product: return "product";
    case TNormKind::lukasiewicz: return "lukasiewicz";
  }
  return "minimum";
}

double TNorm::apply(double a, double b) const {
  require_unit(a, "a");
  require_unit(b, "b");
  switch (kind_) {
    case TNormKind::minimum: return std::min(a, b);
    case TNormKind::product: return a * b;
    case TNormKind::lukasiewicz: {
      // lo - (1 - hi) keeps T(a,1) = a and T(a,b) = T(b,a) exact in floating point.
      const auto [lo, hi] = std::minmax(a, b);
      return std::max(lo - (1.0 - hi), 0.0);
    }
  }
  return std::min(a, b);
}

std::vector<UnitPair> uniform_unit_grid(std::size_t n) {
  if (n < 2) throw DomainError("uniform_unit_grid: need at least 2 points per axis");
  std::vector<UnitPair> grid;
  grid.reserve(n * n);
  const double step = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      grid.emplace_back(static_cast<double>(i) / step, static_cast<double>(j) / step);
    }
  }
  return grid;
}

bool dominates(const TNorm& first, const TNorm& second, std::span<const UnitPair> grid) {
  if (grid.empty()) throw DomainError("dominates: grid must be non-empty");
  return std::all_of(grid.begin(), grid.end(), [&](const UnitPair& p) {
    return first.apply(p.first, p.second) >= second.apply(p.first, p.second);
  });
}

}  // namespace fuzzylip
