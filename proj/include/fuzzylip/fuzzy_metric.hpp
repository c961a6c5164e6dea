#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fuzzylip/metric_matrix.hpp"
#include "fuzzylip/monotone.hpp"
#include "fuzzylip/tnorm.hpp"

namespace fuzzylip {

/// h(t) = offset + slope * t, slope > 0.
struct AffineGrowth {
  double offset;
  double slope;
};

/// h(t) = offset + e^t.
struct ExponentialGrowth {
  double offset;
};

/// Increasing continuous h : (0,+inf) -> (inf h, +inf).
using Growth = std::variant<AffineGrowth, ExponentialGrowth>;

double growth_eval(const Growth& h, double t);
/// lim_{t -> 0+} h(t); h(t) is strictly above this for every t > 0.
double growth_infimum(const Growth& h);
void validate_growth(const Growth& h);

/// The time scaling g : (0,+inf) -> (0,+inf): either a constant or 1/h(t).
class TimeScaling {
 public:
  struct Constant {
    double value;
  };
  struct Reciprocal {
    Growth h;
  };
  using Representation = std::variant<Constant, Reciprocal>;

  static TimeScaling constant(double value);
  static TimeScaling reciprocal(Growth h);

  /// DomainError for t <= 0.
  double operator()(double t) const;
  /// sup over t > 0.
  double supremum() const;

  const Representation& representation() const noexcept { return rep_; }

 private:
  explicit TimeScaling(Representation rep) : rep_(std::move(rep)) {}
  Representation rep_;
};

/// M(x,y,t) = 1 - phi(|x-y|) g(t) on the real line.
class EuclideanFuzzyMetric {
 public:
  EuclideanFuzzyMetric(MonotoneFunction phi, TimeScaling g, TNorm tnorm)
      : phi_(std::move(phi)), g_(std::move(g)), tnorm_(tnorm) {}

  /// phi = min(x,1)/2, g = 1, Lukasiewicz t-norm.
  static EuclideanFuzzyMetric standard();

  const MonotoneFunction& phi() const noexcept { return phi_; }
  const TimeScaling& g() const noexcept { return g_; }
  const TNorm& tnorm() const noexcept { return tnorm_; }

  /// 1 - M(x,y,t) = phi(|x-y|) g(t), computed without cancellation.
  /// Throws InvalidMetricError when this exceeds 1.
  double gap(double x, double y, double t) const;
  /// Throws InvalidMetricError when the raw membership is negative; never clamps.
  double membership(double x, double y, double t) const;
  /// phi(|x-y|) g(t) without range checks.
  double raw_gap(double x, double y, double t) const;

 private:
  MonotoneFunction phi_;
  TimeScaling g_;
  TNorm tnorm_;
};

inline double efm_eval(const EuclideanFuzzyMetric& m, double x, double y, double t) {
  return m.membership(x, y, t);
}

struct ConditionVerdict {
  bool passed = true;
  std::string detail;
  /// Distance (items 1, 2) or time (item 3) where the check failed.
  std::optional<double> witness;
  double witness_value = 0.0;
};

/// The three necessary conditions on (phi, g) for M_{phi,g} to be a fuzzy metric.
struct CodomainConditionsReport {
  ConditionVerdict zero_only_at_origin;  // phi(0) = 0 and phi(x) > 0 for x > 0
  ConditionVerdict phi_bounded;          // sup phi < +inf and phi(x) <= sup on samples
  ConditionVerdict g_bounded;            // g(t) * sup phi <= 1
  bool passed() const noexcept {
    return zero_only_at_origin.passed && phi_bounded.passed && g_bounded.passed;
  }
};

CodomainConditionsReport validate_codomain_conditions(const EuclideanFuzzyMetric& m, std::span<const double> x_grid,
                               std::span<const double> t_grid, double tolerance = 1e-9);

/// M_k(x,y,t) = 1 - min(d(x,y), k) / h(t) with the Lukasiewicz t-norm.
struct TruncatedRule {
  MetricMatrix d;
  double k;
  Growth h;
};

/// M(x,y,t) = e^{-d(x,y)} with the product t-norm (stationary).
struct ExponentialRule {
  MetricMatrix d;
};

/// A Euclidean fuzzy metric evaluated on real coordinates.
struct EuclideanRule {
  EuclideanFuzzyMetric metric;
  std::vector<double> coordinates;
};

/// Explicit membership tables. The table with the largest start_t <= t is
/// used (the first one for smaller t). Not validated at construction so that
/// violating instances can be built for tests.
struct MembershipTable {
  double start_t;
  std::vector<std::vector<double>> membership;
};
struct TableRule {
  std::vector<MembershipTable> tables;
};

using MembershipRule = std::variant<TruncatedRule, ExponentialRule, EuclideanRule, TableRule>;

/// A finite fuzzy metric space (X, M, *). Immutable after construction.
class FiniteFuzzyMetricSpace {
 public:
  FiniteFuzzyMetricSpace(MembershipRule rule, TNorm tnorm);

  std::size_t size() const noexcept { return n_; }
  const TNorm& tnorm() const noexcept { return tnorm_; }
  const MembershipRule& rule() const noexcept { return rule_; }
  bool is_stationary() const noexcept;

  /// M(i,j,t). DomainError for t <= 0 or indices out of range.
  double membership(std::size_t i, std::size_t j, double t) const;
  /// 1 - M(i,j,t), computed directly where the rule allows it.
  double gap(std::size_t i, std::size_t j, double t) const;
  /// gap without the range check of Euclidean-backed spaces.
  double raw_gap(std::size_t i, std::size_t j, double t) const;
  /// M(i,j,t) without the range check of Euclidean-backed spaces.
  double raw_membership(std::size_t i, std::size_t j, double t) const;

  /// The base metric, when the rule carries one.
  const MetricMatrix* base_metric() const noexcept;
  /// Coordinates, for Euclidean-backed spaces.
  const std::vector<double>* coordinates() const noexcept;

 private:
  void check(std::size_t i, std::size_t j, double t) const;

  MembershipRule rule_;
  TNorm tnorm_;
  std::size_t n_ = 0;
};

/// Throws ConstructionError when inf h < k, since M_k could then leave (0,1].
FiniteFuzzyMetricSpace make_mk_space(MetricMatrix d, double k, Growth h);
FiniteFuzzyMetricSpace make_exp_space(MetricMatrix d);
FiniteFuzzyMetricSpace make_euclidean_space(EuclideanFuzzyMetric metric,
                                            std::vector<double> coordinates);
FiniteFuzzyMetricSpace make_table_space(std::vector<MembershipTable> tables, TNorm tnorm);

/// The classical metric 1 - e^{-d(i,j)} of an exponential space.
MetricMatrix exp_derived_metric(const FiniteFuzzyMetricSpace& space);

struct AxiomWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double t = 0.0;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomVerdict {
  bool passed = true;
  std::optional<AxiomWitness> witness;
};

/// George-Veeramani axioms sampled on finite grids.
struct FuzzyMetricReport {
  AxiomVerdict positivity;    // 0 < M(i,j,t) <= 1
  AxiomVerdict identity;      // M(i,j,t) = 1 iff i = j
  AxiomVerdict symmetry;      // M(i,j,t) = M(j,i,t)
  AxiomVerdict triangle;      // M(i,k,t+s) >= M(i,j,t) * M(j,k,s)
  AxiomVerdict monotone_in_t; // M(i,j,.) non-decreasing on the sorted t-grid
  double worst_triangle_slack = 0.0;
  bool passed() const noexcept {
    return positivity.passed && identity.passed && symmetry.passed && triangle.passed &&
           monotone_in_t.passed;
  }
};

FuzzyMetricReport validate_fuzzy_metric(const FiniteFuzzyMetricSpace& space,
                                        std::span<const double> t_grid,
                                        std::span<const double> s_grid, double tolerance = 1e-9);

/// 20 log-spaced points in [1e-3, 1e3].
std::vector<double> default_t_grid();

}  // namespace fuzzylip
