#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzylip/cli/serialization.hpp"
#include "fuzzylip/extension.hpp"
#include "fuzzylip/fuzzy_metric.hpp"

namespace fuzzylip::cli {

/// Where a base metric comes from. Exactly one source is set.
struct MetricSource {
  std::optional<std::vector<std::vector<double>>> matrix;
  std::optional<std::vector<std::vector<double>>> points;
  std::optional<std::string> file;
};

struct SpaceConfig {
  /// "mk", "exp", "euclidean" or "table".
  std::string preset = "mk";
  MetricSource metric;
  double k = 1.0;
  Growth h = AffineGrowth{1.0, 1.0};
  std::vector<double> coordinates;
  EuclideanFuzzyMetric euclidean = EuclideanFuzzyMetric::standard();
  std::vector<MembershipTable> tables;
  TNorm table_tnorm = TNorm::minimum();
};

struct SampleConfig {
  std::vector<std::size_t> subset;
  std::vector<double> t_grid;
  bool stationary = false;
  /// Inline values, one row per point of S (length 1 rows when stationary).
  std::optional<std::vector<std::vector<double>>> values;
  std::optional<std::string> values_file;
};

struct DilationConfig {
  bool estimate = true;
  /// One value: constant K. Otherwise one value per t of the sample grid.
  std::vector<double> values;
};

struct QueryConfig {
  bool all = true;
  std::vector<std::size_t> indices;
  /// Extra real-line points, appended to a Euclidean space before extending.
  std::vector<double> coordinates;
};

struct ValidationConfig {
  std::vector<double> t_grid = default_t_grid();
  std::vector<double> s_grid = default_t_grid();
  std::vector<double> x_grid = log_grid(1e-3, 1e3, 20);
  /// Extra seeded random distances added to x_grid.
  std::size_t random_samples = 16;
};

/// A complete run description, parsed from one JSON document.
struct RunConfig {
  SpaceConfig space;
  EuclideanFuzzyMetric codomain = EuclideanFuzzyMetric::standard();
  SampleConfig samples;
  DilationConfig dilation;
  /// One value: constant alpha. Otherwise one value per t.
  std::vector<double> alpha = {0.5};
  QueryConfig queries;
  ValidationConfig validation;
  ExtensionDistance distance = ExtensionDistance::rho;
  /// Directory against which relative file paths resolve. Not serialized.
  std::string base_dir = ".";

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

RunConfig parse_config(const json& document, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
json to_json(const RunConfig& config);

/// The space, with query coordinates appended for Euclidean presets.
FiniteFuzzyMetricSpace build_space(const RunConfig& config);
SampledMap build_samples(const RunConfig& config);
AlphaSchedule build_alpha(const RunConfig& config);

}  // namespace fuzzylip::cli
