#include "fuzzylip/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "fuzzylip/errors.hpp"

namespace fuzzylip {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t find_exact(const std::vector<double>& grid, double t, const char* what) {
  const auto it = std::find(grid.begin(), grid.end(), t);
  if (it == grid.end()) {
    throw DomainError(std::string(what) + ": t = " + std::to_string(t) + " is not on the grid");
  }
  return static_cast<std::size_t>(it - grid.begin());
}

void validate_t_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("t-grid must be non-empty");
  std::set<double> seen;
  for (double t : grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t-grid values must be positive");
    if (!seen.insert(t).second) throw DomainError("t-grid contains a duplicate value");
  }
}

// (K(t)/g(t)) (1 - M(i,j,t)); shared by rho_t and the hypothesis check.
double scaled_gap(const FiniteFuzzyMetricSpace& space, double k_over_g, std::size_t i,
                  std::size_t j, double t) {
  return k_over_g * space.gap(i, j, t);
}

double k_over_g(const EuclideanFuzzyMetric& codomain, const DilationFunction& k, double t) {
  return k(t) / codomain.g()(t);
}

}  // namespace

// ---------------------------------------------------------------- SampledMap

SampledMap::SampledMap(std::vector<std::size_t> subset, std::vector<double> t_grid,
                       std::vector<std::vector<double>> values)
    : SampledMap(std::move(subset), std::move(t_grid), std::move(values), false) {}

SampledMap SampledMap::stationary(std::vector<std::size_t> subset, std::vector<double> values,
                                  std::vector<double> t_grid) {
  std::vector<std::vector<double>> rows;
  rows.reserve(values.size());
  for (double v : values) rows.push_back({v});
  return SampledMap(std::move(subset), std::move(t_grid), std::move(rows), true);
}

SampledMap::SampledMap(std::vector<std::size_t> subset, std::vector<double> t_grid,
                       std::vector<std::vector<double>> values, bool stationary)
    : subset_(std::move(subset)),
      t_grid_(std::move(t_grid)),
      values_(std::move(values)),
      stationary_(stationary) {
  if (subset_.empty()) throw DomainError("sampled map: S must be non-empty");
  std::set<std::size_t> unique(subset_.begin(), subset_.end());
  if (unique.size() != subset_.size()) throw DomainError("sampled map: S contains duplicates");
  validate_t_grid(t_grid_);
  if (values_.size() != subset_.size()) {
    throw DomainError("sampled map: expected one row of values per point of S");
  }
  const std::size_t width = stationary_ ? 1 : t_grid_.size();
  for (const auto& row : values_) {
    if (row.size() != width) throw DomainError("sampled map: value row has the wrong length");
    for (double v : row) {
      if (!std::isfinite(v)) throw DomainError("sampled map: values must be finite");
    }
  }
}

std::size_t SampledMap::t_index(double t) const {
  if (stationary_) {
    const auto it = std::find(t_grid_.begin(), t_grid_.end(), t);
    return it == t_grid_.end() ? 0 : static_cast<std::size_t>(it - t_grid_.begin());
  }
  return find_exact(t_grid_, t, "sampled map");
}

std::optional<std::size_t> SampledMap::position_of(std::size_t point) const {
  const auto it = std::find(subset_.begin(), subset_.end(), point);
  if (it == subset_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - subset_.begin());
}

void SampledMap::check_indices(std::size_t space_size) const {
  for (std::size_t s : subset_) {
    if (s >= space_size) {
      throw DomainError("sampled map: point " + std::to_string(s) + " is outside a space of " +
                        std::to_string(space_size) + " points");
    }
  }
}

// --------------------------------------------------------- DilationFunction

DilationFunction DilationFunction::constant(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("dilation K must be positive");
  DilationFunction d;
  d.kind_ = Kind::constant;
  d.values_ = {k};
  return d;
}

DilationFunction DilationFunction::tabulated(std::vector<double> t_grid,
                                             std::vector<double> values) {
  validate_t_grid(t_grid);
  if (t_grid.size() != values.size()) {
    throw DomainError("tabulated dilation: grid and values differ in length");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("dilation K(t) must be positive");
  }
  DilationFunction d;
  d.kind_ = Kind::tabulated;
  d.t_ = std::move(t_grid);
  d.values_ = std::move(values);
  return d;
}

DilationFunction DilationFunction::from_function(std::function<double(double)> fn) {
  if (!fn) throw DomainError("dilation function is empty");
  DilationFunction d;
  d.kind_ = Kind::function;
  d.fn_ = std::move(fn);
  return d;
}

double DilationFunction::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("dilation evaluated at t <= 0");
  switch (kind_) {
    case Kind::constant: return values_.front();
    case Kind::tabulated: return values_[find_exact(t_, t, "tabulated dilation")];
    case Kind::function: {
      const double v = fn_(t);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("dilation K(" + std::to_string(t) + ") must be positive");
      }
      return v;
    }
  }
  return values_.front();
}

// ------------------------------------------------------------ AlphaSchedule

AlphaSchedule AlphaSchedule::constant(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  AlphaSchedule a;
  a.values_ = {alpha};
  return a;
}

AlphaSchedule AlphaSchedule::tabulated(std::vector<double> t_grid, std::vector<double> values) {
  validate_t_grid(t_grid);
  if (t_grid.size() != values.size()) {
    throw DomainError("tabulated alpha: grid and values differ in length");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  }
  AlphaSchedule a;
  a.t_ = std::move(t_grid);
  a.values_ = std::move(values);
  return a;
}

double AlphaSchedule::operator()(double t) const {
  if (t_.empty()) return values_.front();
  return values_[find_exact(t_, t, "tabulated alpha")];
}

// ------------------------------------------------------------ dilation

DilationEstimate estimate_dilation(const FiniteFuzzyMetricSpace& space,
                                   const EuclideanFuzzyMetric& codomain, const SampledMap& f,
                                   double t) {
  f.check_indices(space.size());
  if (f.size() < 2) throw DomainError("estimate_dilation needs |S| >= 2");
  const std::size_t ti = f.t_index(t);
  const auto& subset = f.subset();

  DilationEstimate estimate;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      const double numerator = codomain.raw_gap(f.value(a, ti), f.value(b, ti), t);
      const double denominator = space.gap(subset[a], subset[b], t);
      if (denominator == 0.0) {
        if (numerator > 0.0) {
          throw InfeasibleError("map is not fuzzy Lipschitz: points " +
                                    std::to_string(subset[a]) + " and " +
                                    std::to_string(subset[b]) +
                                    " have membership 1 but different values",
                                subset[a], subset[b]);
        }
        continue;
      }
      const double ratio = numerator / denominator;
      if (ratio > estimate.infimum || !estimate.attained_by) {
        estimate.infimum = ratio;
        estimate.attained_by = std::make_pair(a, b);
      }
    }
  }

  if (estimate.infimum == 0.0) {
    estimate.value = kDegenerateDilationFloor;
    estimate.degenerate = true;
    return estimate;
  }

  // Rounding in K/g * (1 - M) and in phi* can leave rho a few ulps short of
  // |f(x) - f(y)|. Step K up until the sup/inf terms at the points of S are
  // dominated in floating point, exactly as the extension evaluates them.
  auto dominated = [&](double k) {
    const auto dilation = DilationFunction::constant(k);
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = 0; b < f.size(); ++b) {
        if (a == b) continue;
        const auto rho = rho_t(space, codomain, dilation, t, subset[a], subset[b]);
        if (rho.is_infinite()) continue;
        const double fa = f.value(a, ti);
        const double fb = f.value(b, ti);
        if (fb - rho.value() > fa || fb + rho.value() < fa) return false;
      }
    }
    return true;
  };
  estimate.value = estimate.infimum;
  for (int step = 0; step < 4096 && !dominated(estimate.value); ++step) {
    estimate.value = std::nextafter(estimate.value, kInfinity);
  }
  return estimate;
}

// ---------------------------------------------------------- hypothesis, rho

HypothesisReport check_hypothesis(const FiniteFuzzyMetricSpace& space,
                                  const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                                  double t) {
  HypothesisReport report;
  report.t = t;
  report.sup_phi = codomain.phi().sup_value().value();
  const double scale = k_over_g(codomain, k, t);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const double lhs = scaled_gap(space, scale, i, j, t);
      const bool passed = lhs < report.sup_phi;
      report.pairs.push_back({i, j, lhs, passed});
      report.passed = report.passed && passed;
      const double excess = lhs - report.sup_phi;
      if (!report.worst_pair || excess > report.worst_excess) {
        report.worst_excess = excess;
        report.worst_pair = std::make_pair(i, j);
      }
    }
  }
  return report;
}

ExtendedNonNegative rho_t(const FiniteFuzzyMetricSpace& space,
                          const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                          double t, std::size_t i, std::size_t j) {
  const double arg = scaled_gap(space, k_over_g(codomain, k, t), i, j, t);
  return right_adjoint_eval(codomain.phi(), ExtendedNonNegative(arg));
}

DistanceMatrix rho_matrix(const FiniteFuzzyMetricSpace& space,
                          const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                          double t) {
  const std::size_t n = space.size();
  const double scale = k_over_g(codomain, k, t);
  DistanceMatrix rho(n, ExtendedNonNegative{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double arg = scaled_gap(space, scale, i, j, t);
      rho(i, j) = rho(j, i) = right_adjoint_eval(codomain.phi(), ExtendedNonNegative(arg));
    }
  }
  return rho;
}

// ------------------------------------------------------------ chains

DistanceMatrix shortest_chains(const DistanceMatrix& weights) {
  const std::size_t n = weights.size();
  DistanceMatrix from_source(n, ExtendedNonNegative::infinity());
  std::vector<char> settled(n);
  for (std::size_t source = 0; source < n; ++source) {
    std::fill(settled.begin(), settled.end(), 0);
    from_source(source, source) = ExtendedNonNegative{};
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (!settled[v] && (u == n || from_source(source, v) < from_source(source, u))) u = v;
      }
      if (u == n || from_source(source, u).is_infinite()) break;
      settled[u] = 1;
      for (std::size_t v = 0; v < n; ++v) {
        if (settled[v]) continue;
        const auto candidate = from_source(source, u) + weights(u, v);
        if (candidate < from_source(source, v)) from_source(source, v) = candidate;
      }
    }
  }
  DistanceMatrix d(n, ExtendedNonNegative{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = std::min(from_source(i, j), from_source(j, i));
    }
  }
  return d;
}

DistanceMatrix chain_pseudometric(const FiniteFuzzyMetricSpace& space,
                                  const EuclideanFuzzyMetric& codomain,
                                  const DilationFunction& k, double t) {
  return shortest_chains(rho_matrix(space, codomain, k, t));
}

// ------------------------------------------------------------ extensions

double mcshane_extend(const SampledMap& f, const DistanceMatrix& rho, std::size_t query,
                      double t) {
  if (query >= rho.size()) throw DomainError("query point out of range");
  const std::size_t ti = f.t_index(t);
  double best = -kInfinity;
  bool any = false;
  for (std::size_t a = 0; a < f.size(); ++a) {
    const auto r = rho(query, f.subset()[a]);
    if (r.is_infinite()) continue;
    best = std::max(best, f.value(a, ti) - r.value());
    any = true;
  }
  if (!any) {
    throw ExtensionUndefinedError(
        "McShane extension undefined at point " + std::to_string(query) + ": every term is -inf",
        query);
  }
  return best;
}

double whitney_extend(const SampledMap& f, const DistanceMatrix& rho, std::size_t query,
                      double t) {
  if (query >= rho.size()) throw DomainError("query point out of range");
  const std::size_t ti = f.t_index(t);
  double best = kInfinity;
  bool any = false;
  for (std::size_t a = 0; a < f.size(); ++a) {
    const auto r = rho(query, f.subset()[a]);
    if (r.is_infinite()) continue;
    best = std::min(best, f.value(a, ti) + r.value());
    any = true;
  }
  if (!any) {
    throw ExtensionUndefinedError(
        "Whitney extension undefined at point " + std::to_string(query) + ": every term is +inf",
        query);
  }
  return best;
}

double blend(double alpha, double f_m, double f_w) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("blend weight alpha must lie in [0,1], got " + std::to_string(alpha));
  }
  return alpha * f_m + (1.0 - alpha) * f_w;
}

bool ExtensionResult::hypothesis_passed() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(),
                     [](const TimeDiagnostics& d) { return d.hypothesis.passed; });
}

const ExtensionRow* ExtensionResult::find(std::size_t point, std::size_t t_index) const {
  const auto q = std::find(queries.begin(), queries.end(), point);
  if (q == queries.end() || t_index >= t_grid.size()) return nullptr;
  return &rows[t_index * queries.size() + static_cast<std::size_t>(q - queries.begin())];
}

ExtensionResult extend(const FiniteFuzzyMetricSpace& space, const EuclideanFuzzyMetric& codomain,
                       const SampledMap& f, const DilationFunction& k, const AlphaSchedule& alpha,
                       std::span<const std::size_t> queries, const ExtensionOptions& options) {
  const std::size_t n = space.size();
  f.check_indices(n);
  for (std::size_t q : queries) {
    if (q >= n) throw DomainError("query point " + std::to_string(q) + " out of range");
  }

  ExtensionResult result;
  result.queries.assign(queries.begin(), queries.end());
  result.t_grid = f.t_grid();
  result.rows.reserve(result.t_grid.size() * queries.size());

  for (std::size_t ti = 0; ti < result.t_grid.size(); ++ti) {
    const double t = result.t_grid[ti];
    TimeDiagnostics diag;
    diag.t = t;
    diag.k = k(t);
    diag.alpha = alpha(t);
    diag.hypothesis = check_hypothesis(space, codomain, k, t);

    const DistanceMatrix rho = rho_matrix(space, codomain, k, t);
    const DistanceMatrix chain = shortest_chains(rho);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        diag.infinite_rho += rho(i, j).is_infinite() ? 1 : 0;
        diag.infinite_chain += chain(i, j).is_infinite() ? 1 : 0;
        for (std::size_t m = 0; m < n && diag.rho_is_metric; ++m) {
          const double via = (rho(i, m) + rho(m, j)).value();
          if (rho(i, j).value() > via + 1e-9) diag.rho_is_metric = false;
        }
      }
    }
    const DistanceMatrix& distance = options.distance == ExtensionDistance::rho ? rho : chain;

    const std::size_t first_row = result.rows.size();
    for (std::size_t q : queries) {
      ExtensionRow row;
      row.point = q;
      row.t_index = ti;
      row.t = t;
      try {
        row.f_m = mcshane_extend(f, distance, q, t);
        row.f_w = whitney_extend(f, distance, q, t);
        row.f_alpha = blend(diag.alpha, row.f_m, row.f_w);
      } catch (const ExtensionUndefinedError&) {
        row.defined = false;
        row.f_m = row.f_w = row.f_alpha = kNaN;
        ++diag.undefined_points;
      }
      result.rows.push_back(row);
    }

    for (std::size_t a = first_row; a < result.rows.size(); ++a) {
      for (std::size_t b = a + 1; b < result.rows.size(); ++b) {
        const ExtensionRow& x = result.rows[a];
        const ExtensionRow& y = result.rows[b];
        if (!x.defined || !y.defined || x.point == y.point) continue;
        const double denominator = space.gap(x.point, y.point, t);
        for (auto [u, v] : {std::pair{x.f_m, y.f_m}, std::pair{x.f_w, y.f_w}}) {
          const double numerator = codomain.raw_gap(u, v, t);
          const double ratio = denominator > 0.0 ? numerator / denominator
                               : numerator > 0.0 ? kInfinity
                                                 : 0.0;
          diag.achieved_constant = std::max(diag.achieved_constant, ratio);
        }
      }
    }
    result.diagnostics.push_back(std::move(diag));
  }
  return result;
}

LipschitzReport verify_fuzzy_lipschitz(const FiniteFuzzyMetricSpace& space,
                                       const EuclideanFuzzyMetric& codomain,
                                       const ExtensionResult& extended, const DilationFunction& k,
                                       std::span<const double> t_grid, double tolerance) {
  const std::size_t n = space.size();
  LipschitzReport report;
  auto record = [&](LipschitzWitness witness, bool failed) {
    const double slack = witness.rhs - witness.lhs;
    if (failed) {
      if (report.passed || !(slack >= report.worst_slack)) report.witness = witness;
      report.passed = false;
    }
    if (!(slack >= report.worst_slack)) report.worst_slack = slack;
  };

  for (double t : t_grid) {
    const std::size_t ti = find_exact(extended.t_grid, t, "verify_fuzzy_lipschitz");
    std::vector<const ExtensionRow*> rows(n);
    for (std::size_t p = 0; p < n; ++p) {
      rows[p] = extended.find(p, ti);
      if (rows[p] == nullptr) {
        throw DomainError("verify_fuzzy_lipschitz: point " + std::to_string(p) +
                          " has no extended value");
      }
    }
    const double kt = k(t);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double rhs = kt * space.gap(i, j, t);
        const ExtensionRow& x = *rows[i];
        const ExtensionRow& y = *rows[j];
        for (auto [which, u, v] : {std::tuple{'M', x.f_m, y.f_m}, std::tuple{'W', x.f_w, y.f_w},
                                   std::tuple{'A', x.f_alpha, y.f_alpha}}) {
          ++report.checks;
          if (!x.defined || !y.defined) {
            record({i, j, t, which, kNaN, rhs}, true);
            continue;
          }
          const double lhs = codomain.raw_gap(u, v, t);
          record({i, j, t, which, lhs, rhs}, lhs > rhs + tolerance);
        }
      }
    }
  }
  return report;
}

std::pair<double, double> truncated_closed_form(const MetricMatrix& d, double k, double q,
                                               const SampledMap& f, std::size_t query, double t) {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("Q(t) must be finite and >= 0");
  if (query >= d.size()) throw DomainError("query point out of range");
  f.check_indices(d.size());
  const std::size_t ti = f.t_index(t);
  double f_m = -kInfinity;
  double f_w = kInfinity;
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double truncated = std::min(d(f.subset()[a], query), k);
    if (!(q * truncated < 0.5)) {
      throw HypothesisError("Q(t) min(d, k) = " + std::to_string(q * truncated) +
                            " is not below 1/2 for point " + std::to_string(f.subset()[a]));
    }
    const double modulus = 2.0 * q * truncated;
    f_m = std::max(f_m, f.value(a, ti) - modulus);
    f_w = std::min(f_w, f.value(a, ti) + modulus);
  }
  return {f_m, f_w};
}

std::pair<double, double> exponential_closed_form(const MetricMatrix& d, double k,
                                               const SampledMap& f, std::size_t query, double t) {
  if (!(k > 0.0 && k < 0.5)) {
    throw HypothesisError("exponential closed form needs 0 < K(t) < 1/2, got " +
                          std::to_string(k));
  }
  if (query >= d.size()) throw DomainError("query point out of range");
  f.check_indices(d.size());
  const std::size_t ti = f.t_index(t);
  double f_m = -kInfinity;
  double f_w = kInfinity;
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double modulus = 2.0 * k * -std::expm1(-d(f.subset()[a], query));
    f_m = std::max(f_m, f.value(a, ti) - modulus);
    f_w = std::min(f_w, f.value(a, ti) + modulus);
  }
  return {f_m, f_w};
}

}  // namespace fuzzylip
