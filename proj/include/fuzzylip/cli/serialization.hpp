#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "fuzzylip/errors.hpp"
#include "fuzzylip/extension.hpp"
#include "fuzzylip/fuzzy_metric.hpp"
#include "fuzzylip/monotone.hpp"

namespace fuzzylip::cli {

using nlohmann::json;

/// Malformed configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or ill-formed input file; `line` is 0 when not applicable.
class IoError : public Error {
 public:
  IoError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Finite doubles as JSON numbers; +inf, -inf and NaN as the strings "inf", "-inf", "nan".
json number_to_json(double v);
double number_from_json(const json& j);

/// Fixed 17-significant-digit rendering used by every text and CSV output.
std::string format_number(double v);

json to_json(const MonotoneFunction& phi);
MonotoneFunction monotone_from_json(const json& j);
json to_json(const Growth& h);
Growth growth_from_json(const json& j);
json to_json(const TimeScaling& g);
TimeScaling time_scaling_from_json(const json& j);
json to_json(const EuclideanFuzzyMetric& m);
EuclideanFuzzyMetric euclidean_metric_from_json(const json& j);

json to_json(const CodomainConditionsReport& report);
json to_json(const FuzzyMetricReport& report);
json to_json(const GaloisReport& report);
json to_json(const HypothesisReport& report);
json to_json(const LipschitzReport& report);
json to_json(const DilationEstimate& estimate, double t);
json to_json(const TimeDiagnostics& diagnostics);

/// Square matrix CSV with an optional header row.
std::vector<std::vector<double>> read_matrix_csv(const std::string& path);

/// Sample values from a CSV with header "point,t,value" (or "point,value" for
/// stationary maps). Returns one row per point of `subset`, in its order; a
/// stationary map yields rows of length 1.
std::vector<std::vector<double>> read_values_csv(const std::string& path,
                                                 const std::vector<std::size_t>& subset,
                                                 const std::vector<double>& t_grid,
                                                 bool stationary);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace fuzzylip::cli
