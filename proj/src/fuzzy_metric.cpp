#include "fuzzylip/fuzzy_metric.hpp"

#include <algorithm>
#include <cmath>
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

void require_time(double t) {
  if (!(t > 0.0) || std::isnan(t)) {
    throw DomainError("time parameter must be > 0, got " + std::to_string(t));
  }
}

const std::vector<std::vector<double>>& table_at(const TableRule& rule, double t) {
  const MembershipTable* chosen = &rule.tables.front();
  for (const auto& table : rule.tables) {
    if (table.start_t <= t) chosen = &table;
  }
  return chosen->membership;
}

}  // namespace

double growth_eval(const Growth& h, double t) {
  require_time(t);
  return std::visit(Overloaded{
                        [t](const AffineGrowth& a) { return a.offset + a.slope * t; },
                        [t](const ExponentialGrowth& e) { return e.offset + std::exp(t); },
                    },
                    h);
}

double growth_infimum(const Growth& h) {
  return std::visit(Overloaded{
                        [](const AffineGrowth& a) { return a.offset; },
                        [](const ExponentialGrowth& e) { return e.offset + 1.0; },
                    },
                    h);
}

void validate_growth(const Growth& h) {
  std::visit(Overloaded{
                 [](const AffineGrowth& a) {
                   if (!std::isfinite(a.offset) || !(a.slope > 0.0) || !std::isfinite(a.slope)) {
                     throw ConstructionError("affine h needs a finite offset and slope > 0");
                   }
                 },
                 [](const ExponentialGrowth& e) {
                   if (!std::isfinite(e.offset)) {
                     throw ConstructionError("exponential h needs a finite offset");
                   }
                 },
             },
             h);
  if (!(growth_infimum(h) >= 0.0)) {
    throw ConstructionError("h must be positive on (0,+inf)");
  }
}

TimeScaling TimeScaling::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConstructionError("constant g must be positive and finite");
  }
  return TimeScaling(Constant{value});
}

TimeScaling TimeScaling::reciprocal(Growth h) {
  validate_growth(h);
  return TimeScaling(Reciprocal{h});
}

double TimeScaling::operator()(double t) const {
  require_time(t);
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.value; },
                        [t](const Reciprocal& r) { return 1.0 / growth_eval(r.h, t); },
                    },
                    rep_);
}

double TimeScaling::supremum() const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.value; },
                        [](const Reciprocal& r) {
                          const double inf_h = growth_infimum(r.h);
                          return inf_h > 0.0 ? 1.0 / inf_h : kInfinity;
                        },
                    },
                    rep_);
}

EuclideanFuzzyMetric EuclideanFuzzyMetric::standard() {
  return EuclideanFuzzyMetric(MonotoneFunction::clamp(2.0, 1.0), TimeScaling::constant(1.0),
                              TNorm::lukasiewicz());
}

double EuclideanFuzzyMetric::raw_gap(double x, double y, double t) const {
  return phi_(std::abs(x - y)) * g_(t);
}

double EuclideanFuzzyMetric::gap(double x, double y, double t) const {
  const double value = raw_gap(x, y, t);
  if (value > 1.0) {
    throw InvalidMetricError("membership 1 - phi(|x-y|) g(t) = " + std::to_string(1.0 - value) +
                                 " is negative at x=" + std::to_string(x) +
                                 ", y=" + std::to_string(y) + ", t=" + std::to_string(t),
                             x, y, t);
  }
  return value;
}

double EuclideanFuzzyMetric::membership(double x, double y, double t) const {
  return 1.0 - gap(x, y, t);
}

CodomainConditionsReport validate_codomain_conditions(const EuclideanFuzzyMetric& m, std::span<const double> x_grid,
                               std::span<const double> t_grid, double tolerance) {
  if (x_grid.empty() || t_grid.empty()) throw DomainError("validate_codomain_conditions: empty grid");
  CodomainConditionsReport report;
  const MonotoneFunction& phi = m.phi();

  auto& zero = report.zero_only_at_origin;
  if (const double at0 = phi(0.0); at0 != 0.0) {
    zero = {false, "phi(0) != 0", 0.0, at0};
  } else {
    for (double x : x_grid) {
      if (x > 0.0 && !(phi(x) > 0.0)) {
        zero = {false, "phi vanishes at a positive distance", x, phi(x)};
        break;
      }
    }
  }

  const double sup = phi.sup_value().value();
  auto& bounded = report.phi_bounded;
  if (!std::isfinite(sup)) {
    bounded = {false, "phi is unbounded (phi(+inf) = +inf)", kInfinity, sup};
  } else {
    for (double x : x_grid) {
      if (phi(x) > sup) {
        bounded = {false, "phi exceeds its declared supremum", x, phi(x)};
        break;
      }
    }
  }

  auto& g_bound = report.g_bounded;
  for (double t : t_grid) {
    const double g = m.g()(t);
    if (!std::isfinite(sup)) {
      g_bound = {false, "g cannot be bounded by 1/sup phi when phi is unbounded", t, kInfinity};
      break;
    }
    if (g * sup > 1.0 + tolerance) {
      g_bound = {false, "g(t) * sup phi exceeds 1", t, g * sup};
      break;
    }
  }
  return report;
}

FiniteFuzzyMetricSpace::FiniteFuzzyMetricSpace(MembershipRule rule, TNorm tnorm)
    : rule_(std::move(rule)), tnorm_(tnorm) {
  n_ = std::visit(Overloaded{
                      [](const TruncatedRule& r) { return r.d.size(); },
                      [](const ExponentialRule& r) { return r.d.size(); },
                      [](const EuclideanRule& r) { return r.coordinates.size(); },
                      [](const TableRule& r) {
                        if (r.tables.empty()) throw ConstructionError("no membership tables");
                        const std::size_t n = r.tables.front().membership.size();
                        for (const auto& table : r.tables) {
                          if (table.membership.size() != n) {
                            throw ConstructionError("membership tables differ in size");
                          }
                          for (const auto& row : table.membership) {
                            if (row.size() != n) {
                              throw ConstructionError("membership table is not square");
                            }
                            for (double v : row) {
                              if (!std::isfinite(v)) {
                                throw ConstructionError("membership entries must be finite");
                              }
                            }
                          }
                        }
                        return n;
                      },
                  },
                  rule_);
  if (n_ == 0) throw ConstructionError("fuzzy metric space needs at least one point");
}

bool FiniteFuzzyMetricSpace::is_stationary() const noexcept {
  return std::visit(Overloaded{
                        [](const TruncatedRule&) { return false; },
                        [](const ExponentialRule&) { return true; },
                        [](const EuclideanRule& r) {
                          return std::holds_alternative<TimeScaling::Constant>(
                              r.metric.g().representation());
                        },
                        [](const TableRule& r) { return r.tables.size() == 1; },
                    },
                    rule_);
}

void FiniteFuzzyMetricSpace::check(std::size_t i, std::size_t j, double t) const {
  require_time(t);
  if (i >= n_ || j >= n_) {
    throw DomainError("point index out of range (" + std::to_string(i) + ", " +
                      std::to_string(j) + ") for a space of size " + std::to_string(n_));
  }
}

double FiniteFuzzyMetricSpace::gap(std::size_t i, std::size_t j, double t) const {
  if (const auto* r = std::get_if<EuclideanRule>(&rule_)) {
    check(i, j, t);
    return r->metric.gap(r->coordinates[i], r->coordinates[j], t);
  }
  return raw_gap(i, j, t);
}

double FiniteFuzzyMetricSpace::raw_gap(std::size_t i, std::size_t j, double t) const {
  check(i, j, t);
  return std::visit(
      Overloaded{
          [&](const TruncatedRule& r) { return std::min(r.d(i, j), r.k) / growth_eval(r.h, t); },
          [&](const ExponentialRule& r) { return -std::expm1(-r.d(i, j)); },
          [&](const EuclideanRule& r) {
            return r.metric.raw_gap(r.coordinates[i], r.coordinates[j], t);
          },
          [&](const TableRule& r) { return 1.0 - table_at(r, t)[i][j]; },
      },
      rule_);
}

double FiniteFuzzyMetricSpace::raw_membership(std::size_t i, std::size_t j, double t) const {
  check(i, j, t);
  return std::visit(
      Overloaded{
          [&](const TruncatedRule& r) {
            return 1.0 - std::min(r.d(i, j), r.k) / growth_eval(r.h, t);
          },
          [&](const ExponentialRule& r) { return std::exp(-r.d(i, j)); },
          [&](const EuclideanRule& r) {
            return 1.0 - r.metric.raw_gap(r.coordinates[i], r.coordinates[j], t);
          },
          [&](const TableRule& r) { return table_at(r, t)[i][j]; },
      },
      rule_);
}

double FiniteFuzzyMetricSpace::membership(std::size_t i, std::size_t j, double t) const {
  if (const auto* r = std::get_if<EuclideanRule>(&rule_)) {
    check(i, j, t);
    return r->metric.membership(r->coordinates[i], r->coordinates[j], t);
  }
  return raw_membership(i, j, t);
}

const MetricMatrix* FiniteFuzzyMetricSpace::base_metric() const noexcept {
  if (const auto* r = std::get_if<TruncatedRule>(&rule_)) return &r->d;
  if (const auto* r = std::get_if<ExponentialRule>(&rule_)) return &r->d;
  return nullptr;
}

const std::vector<double>* FiniteFuzzyMetricSpace::coordinates() const noexcept {
  if (const auto* r = std::get_if<EuclideanRule>(&rule_)) return &r->coordinates;
  return nullptr;
}

FiniteFuzzyMetricSpace make_mk_space(MetricMatrix d, double k, Growth h) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConstructionError("k must be positive and finite");
  validate_growth(h);
  if (growth_infimum(h) < k) {
    throw ConstructionError("h must map (0,+inf) into (k,+inf): inf h = " +
                            std::to_string(growth_infimum(h)) + " < k = " + std::to_string(k));
  }
  return FiniteFuzzyMetricSpace(TruncatedRule{std::move(d), k, h}, TNorm::lukasiewicz());
}

FiniteFuzzyMetricSpace make_exp_space(MetricMatrix d) {
  return FiniteFuzzyMetricSpace(ExponentialRule{std::move(d)}, TNorm::product());
}

FiniteFuzzyMetricSpace make_euclidean_space(EuclideanFuzzyMetric metric,
                                            std::vector<double> coordinates) {
  for (double c : coordinates) {
    if (!std::isfinite(c)) throw ConstructionError("coordinates must be finite");
  }
  const TNorm tnorm = metric.tnorm();
  return FiniteFuzzyMetricSpace(EuclideanRule{std::move(metric), std::move(coordinates)}, tnorm);
}

FiniteFuzzyMetricSpace make_table_space(std::vector<MembershipTable> tables, TNorm tnorm) {
  std::sort(tables.begin(), tables.end(),
            [](const MembershipTable& a, const MembershipTable& b) { return a.start_t < b.start_t; });
  return FiniteFuzzyMetricSpace(TableRule{std::move(tables)}, tnorm);
}

MetricMatrix exp_derived_metric(const FiniteFuzzyMetricSpace& space) {
  const auto* rule = std::get_if<ExponentialRule>(&space.rule());
  if (rule == nullptr) throw DomainError("exp_derived_metric needs an exponential space");
  const std::size_t n = space.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = -std::expm1(-rule->d(i, j));
  }
  return MetricMatrix::from_rows(rows, 1e-12);
}

FuzzyMetricReport validate_fuzzy_metric(const FiniteFuzzyMetricSpace& space,
                                        std::span<const double> t_grid,
                                        std::span<const double> s_grid, double tolerance) {
  const std::size_t n = space.size();
  if (n < 2) throw DomainError("validate_fuzzy_metric needs at least 2 points");
  if (t_grid.empty() || s_grid.empty()) throw DomainError("validate_fuzzy_metric: empty grid");

  FuzzyMetricReport report;
  report.worst_triangle_slack = kInfinity;
  auto fail = [](AxiomVerdict& verdict, AxiomWitness witness) {
    if (verdict.passed) verdict.witness = witness;
    verdict.passed = false;
  };
  auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };

  std::vector<double> times(t_grid.begin(), t_grid.end());
  times.insert(times.end(), s_grid.begin(), s_grid.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  for (double t : times) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double m = space.raw_membership(i, j, t);
        if (!(m > 0.0 && m <= 1.0)) fail(report.positivity, {i, j, 0, t, 0.0, m, 0.0});
        // The gap stays positive where 1 - gap rounds to 1.
        if ((i == j) != (space.raw_gap(i, j, t) == 0.0)) fail(report.identity, {i, j, 0, t, 0.0, m, 1.0});
        const double mirrored = space.raw_membership(j, i, t);
        if (m != mirrored) fail(report.symmetry, {i, j, 0, t, 0.0, m, mirrored});
      }
    }
  }

  for (std::size_t a = 0; a + 1 < times.size(); ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double before = space.raw_membership(i, j, times[a]);
        const double after = space.raw_membership(i, j, times[a + 1]);
        if (before > after + tolerance) {
          fail(report.monotone_in_t, {i, j, 0, times[a], times[a + 1], before, after});
        }
      }
    }
  }

  const TNorm& tnorm = space.tnorm();
  for (double t : t_grid) {
    for (double s : s_grid) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double mij = unit(space.raw_membership(i, j, t));
          for (std::size_t k = 0; k < n; ++k) {
            const double lhs = space.raw_membership(i, k, t + s);
            const double rhs = tnorm(mij, unit(space.raw_membership(j, k, s)));
            const double slack = lhs - rhs;
            report.worst_triangle_slack = std::min(report.worst_triangle_slack, slack);
            if (slack < -tolerance) fail(report.triangle, {i, j, k, t, s, lhs, rhs});
          }
        }
      }
    }
  }
  return report;
}

std::vector<double> default_t_grid() { return log_grid(1e-3, 1e3, 20); }

}  // namespace fuzzylip
