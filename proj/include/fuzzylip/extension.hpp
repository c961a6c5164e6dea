#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fuzzylip/extended.hpp"
#include "fuzzylip/fuzzy_metric.hpp"

namespace fuzzylip {

/// Dense row-major square matrix.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, T fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using DistanceMatrix = SquareMatrix<ExtendedNonNegative>;

/// Values f(s,t) of a map on a subset S of a finite space, sampled on a t-grid.
class SampledMap {
 public:
  /// values[a][b] = f(subset[a], t_grid[b]).
  SampledMap(std::vector<std::size_t> subset, std::vector<double> t_grid,
             std::vector<std::vector<double>> values);
  /// One value per point of S, shared by every t.
  static SampledMap stationary(std::vector<std::size_t> subset, std::vector<double> values,
                               std::vector<double> t_grid);

  std::size_t size() const noexcept { return subset_.size(); }
  const std::vector<std::size_t>& subset() const noexcept { return subset_; }
  const std::vector<double>& t_grid() const noexcept { return t_grid_; }
  bool is_stationary() const noexcept { return stationary_; }

  double value(std::size_t sample, std::size_t t_index) const {
    return stationary_ ? values_[sample][0] : values_[sample][t_index];
  }
  /// Position of t in the grid; any t is accepted for stationary maps.
  std::size_t t_index(double t) const;
  double value_at(std::size_t sample, double t) const { return value(sample, t_index(t)); }
  /// Position of a point of X inside S, if it belongs to S.
  std::optional<std::size_t> position_of(std::size_t point) const;

  /// DomainError if some index of S is not a point of the space.
  void check_indices(std::size_t space_size) const;

 private:
  SampledMap(std::vector<std::size_t> subset, std::vector<double> t_grid,
             std::vector<std::vector<double>> values, bool stationary);

  std::vector<std::size_t> subset_;
  std::vector<double> t_grid_;
  std::vector<std::vector<double>> values_;
  bool stationary_ = false;
};

/// The dilation K(t) > 0 of a fuzzy Lipschitz map.
class DilationFunction {
 public:
  static DilationFunction constant(double k);
  static DilationFunction tabulated(std::vector<double> t_grid, std::vector<double> values);
  static DilationFunction from_function(std::function<double(double)> fn);

  /// DomainError for t outside a tabulated grid or a non-positive value.
  double operator()(double t) const;

  bool is_constant() const noexcept { return kind_ == Kind::constant; }
  bool is_tabulated() const noexcept { return kind_ == Kind::tabulated; }
  const std::vector<double>& table_t() const noexcept { return t_; }
  const std::vector<double>& table_values() const noexcept { return values_; }

 private:
  enum class Kind { constant, tabulated, function };
  Kind kind_ = Kind::constant;
  std::vector<double> t_;
  std::vector<double> values_;
  std::function<double(double)> fn_;
};

/// Per-t weight alpha(t) in [0,1] of the McShane extension in a blend.
class AlphaSchedule {
 public:
  static AlphaSchedule constant(double alpha);
  static AlphaSchedule tabulated(std::vector<double> t_grid, std::vector<double> values);
  double operator()(double t) const;

 private:
  std::vector<double> t_;
  std::vector<double> values_;
};

struct DilationEstimate {
  /// The K(t) to use: the smallest double >= infimum for which the sampled
  /// values are 1-Lipschitz for rho_t in floating point, or the floor when degenerate.
  double value = 0.0;
  /// max over pairs of [1 - N(f(x),f(y),t)] / [1 - M(x,y,t)].
  double infimum = 0.0;
  /// f is constant on S, so any K > 0 works and `value` is the floor.
  bool degenerate = false;
  /// Pair of S-positions attaining the infimum.
  std::optional<std::pair<std::size_t, std::size_t>> attained_by;
};

inline constexpr double kDegenerateDilationFloor = 1e-12;

/// Throws InfeasibleError for two points at membership 1 carrying different values.
DilationEstimate estimate_dilation(const FiniteFuzzyMetricSpace& space,
                                   const EuclideanFuzzyMetric& codomain, const SampledMap& f,
                                   double t);

struct PairVerdict {
  std::size_t i;
  std::size_t j;
  double lhs;
  bool passed;
};

/// (K(t)/g(t)) (1 - M(x,y,t)) < phi(+inf) over all pairs of X.
struct HypothesisReport {
  double t = 0.0;
  double sup_phi = 0.0;
  std::vector<PairVerdict> pairs;
  /// max lhs - sup_phi; negative when every pair passes, -inf with no pairs.
  double worst_excess = -kInfinity;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  bool passed = true;
};

HypothesisReport check_hypothesis(const FiniteFuzzyMetricSpace& space,
                                  const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                                  double t);

/// phi*((K(t)/g(t)) (1 - M(i,j,t))).
ExtendedNonNegative rho_t(const FiniteFuzzyMetricSpace& space,
                          const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                          double t, std::size_t i, std::size_t j);

DistanceMatrix rho_matrix(const FiniteFuzzyMetricSpace& space,
                          const EuclideanFuzzyMetric& codomain, const DilationFunction& k,
                          double t);

/// Infimum over chains of summed edge weights, for non-negative symmetric weights.
///
/// Because weights are non-negative, any chain that revisits a point costs at
/// least as much as the chain with the loop removed, so the infimum over all
/// finite chains is attained by a simple path and equals the shortest-path
/// distance. Each row is a dense Dijkstra run whose distances accumulate
/// edge by edge along the path; floating-point addition is monotone, so this
/// equals the minimum over simple chains of their left-to-right sums exactly.
/// d(i,j) and d(j,i) are then both set to the smaller of the two directions.
DistanceMatrix shortest_chains(const DistanceMatrix& weights);

/// d_t: the infimum over chains of summed rho_t weights.
DistanceMatrix chain_pseudometric(const FiniteFuzzyMetricSpace& space,
                                  const EuclideanFuzzyMetric& codomain,
                                  const DilationFunction& k, double t);

/// sup over s in S of f(s,t) - rho(query, s); infinite distances are skipped.
double mcshane_extend(const SampledMap& f, const DistanceMatrix& rho, std::size_t query, double t);
/// inf over s in S of f(s,t) + rho(query, s); infinite distances are skipped.
double whitney_extend(const SampledMap& f, const DistanceMatrix& rho, std::size_t query, double t);

/// alpha f^M + (1 - alpha) f^W. DomainError for alpha outside [0,1].
double blend(double alpha, double f_m, double f_w);
inline double blend(const AlphaSchedule& alpha, double f_m, double f_w, double t) {
  return blend(alpha(t), f_m, f_w);
}

enum class ExtensionDistance {
  /// rho_t itself, as in the explicit McShane/Whitney formulas.
  rho,
  /// The chain pseudometric d_t.
  chain,
};

struct ExtensionOptions {
  ExtensionDistance distance = ExtensionDistance::rho;
};

struct ExtensionRow {
  std::size_t point = 0;
  std::size_t t_index = 0;
  double t = 0.0;
  double f_m = 0.0;
  double f_w = 0.0;
  double f_alpha = 0.0;
  /// False when every rho(point, s) is infinite; the values are then NaN.
  bool defined = true;
};

struct TimeDiagnostics {
  double t = 0.0;
  double k = 0.0;
  double alpha = 0.0;
  HypothesisReport hypothesis;
  std::size_t infinite_rho = 0;
  std::size_t infinite_chain = 0;
  /// rho_t satisfies the triangle inequality on X (within 1e-9).
  bool rho_is_metric = true;
  /// max over query pairs of [1 - N(fhat(x),fhat(y),t)] / [1 - M(x,y,t)],
  /// over both f^M and f^W.
  double achieved_constant = 0.0;
  std::size_t undefined_points = 0;
};

struct ExtensionResult {
  std::vector<std::size_t> queries;
  std::vector<double> t_grid;
  /// Ordered by t first, then by query.
  std::vector<ExtensionRow> rows;
  std::vector<TimeDiagnostics> diagnostics;

  bool hypothesis_passed() const;
  /// Row for a point and a t position, if the point was queried.
  const ExtensionRow* find(std::size_t point, std::size_t t_index) const;
};

/// Extends f to the query points at every t of f's grid.
ExtensionResult extend(const FiniteFuzzyMetricSpace& space, const EuclideanFuzzyMetric& codomain,
                       const SampledMap& f, const DilationFunction& k, const AlphaSchedule& alpha,
                       std::span<const std::size_t> queries, const ExtensionOptions& options = {});

struct LipschitzWitness {
  std::size_t i;
  std::size_t j;
  double t;
  char which;  // 'M', 'W' or 'A' (blend)
  double lhs;
  double rhs;
};

struct LipschitzReport {
  bool passed = true;
  std::size_t checks = 0;
  /// min over checks of K(t)(1 - M) - (1 - N); negative on failure.
  double worst_slack = kInfinity;
  std::optional<LipschitzWitness> witness;
};

/// 1 - N(fhat(x,t), fhat(y,t), t) <= K(t)(1 - M(x,y,t)) + tolerance for all
/// pairs of X and each t, for f^M, f^W and the blend. The result must cover every point of X.
LipschitzReport verify_fuzzy_lipschitz(const FiniteFuzzyMetricSpace& space,
                                       const EuclideanFuzzyMetric& codomain,
                                       const ExtensionResult& extended, const DilationFunction& k,
                                       std::span<const double> t_grid, double tolerance = 1e-9);

/// McShane/Whitney values for M_k with the standard codomain, where the
/// modulus is 2 Q(t) min(d(s,x), k). HypothesisError unless Q(t) min(d,k) < 1/2.
std::pair<double, double> truncated_closed_form(const MetricMatrix& d, double k, double q,
                                               const SampledMap& f, std::size_t query, double t);

/// McShane/Whitney values for the exponential space with the standard
/// codomain, modulus 2 K(t)(1 - e^{-d(s,x)}). HypothesisError unless 0 < K < 1/2.
std::pair<double, double> exponential_closed_form(const MetricMatrix& d, double k,
                                               const SampledMap& f, std::size_t query, double t);

}  // namespace fuzzylip
