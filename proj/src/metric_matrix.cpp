#include "fuzzylip/metric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzylip/errors.hpp"

namespace fuzzylip {

namespace {

std::string entry(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

MetricMatrix MetricMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                     double triangle_tolerance) {
  const std::size_t n = rows.size();
  if (n == 0) throw ConstructionError("metric matrix is empty");
  std::vector<double> data;
  data.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ConstructionError("metric matrix is not square: row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0.0) {
        throw ConstructionError("metric entry " + entry(i, j) + " must be finite and >= 0");
      }
      data.push_back(v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (data[i * n + i] != 0.0) throw ConstructionError("metric diagonal " + entry(i, i) + " != 0");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (data[i * n + j] != data[j * n + i]) {
        throw ConstructionError("metric matrix not symmetric at " + entry(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double direct = data[i * n + k];
        const double via = data[i * n + j] + data[j * n + k];
        if (direct > via + triangle_tolerance * std::max(1.0, direct)) {
          throw ConstructionError("triangle inequality fails: d" + entry(i, k) + " > d" +
                                  entry(i, j) + " + d" + entry(j, k));
        }
      }
    }
  }
  return MetricMatrix(n, std::move(data));
}

MetricMatrix MetricMatrix::from_points(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw ConstructionError("no points given");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != points[0].size()) {
      throw ConstructionError("point " + std::to_string(i) + " has the wrong dimension");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) {
        const double diff = points[i][c] - points[j][c];
        sq += diff * diff;
      }
      rows[i][j] = rows[j][i] = std::sqrt(sq);
    }
  }
  // sqrt rounding can break the triangle inequality by a few ulps.
  return from_rows(rows, 1e-12);
}

MetricMatrix MetricMatrix::from_line(std::span<const double> coordinates) {
  const std::size_t n = coordinates.size();
  if (n == 0) throw ConstructionError("no points given");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = std::abs(coordinates[i] - coordinates[j]);
  }
  return from_rows(rows, 1e-12);
}

std::vector<std::vector<double>> MetricMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

}  // namespace fuzzylip
