#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fuzzylip {

/// A finite metric given as a dense symmetric matrix.
///
/// Construction validates eagerly (square, finite, non-negative, zero diagonal,
/// symmetric, triangle inequality over all triples) and throws
/// ConstructionError naming the first violating entry. Off-diagonal zeros are
/// accepted; the fuzzy-metric validator reports them as identity failures.
class MetricMatrix {
 public:
  MetricMatrix() = default;

  /// `triangle_tolerance` is relative to max(1, d(i,k)).
  static MetricMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                double triangle_tolerance = 1e-12);
  /// Euclidean distances between points of equal dimension.
  static MetricMatrix from_points(const std::vector<std::vector<double>>& points);
  /// |x_i - x_j| on the real line.
  static MetricMatrix from_line(std::span<const double> coordinates);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::vector<std::vector<double>> rows() const;

 private:
  MetricMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace fuzzylip
