#include "fuzzylip/cli/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace fuzzylip::cli {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string(context) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::string kind_of(const json& j, const char* context) {
  const json& kind = field(j, "kind", context);
  if (!kind.is_string()) throw ConfigError(std::string(context) + ": 'kind' must be a string");
  return kind.get<std::string>();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Lines that are neither empty nor comments, with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, 0, "cannot open file");
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(number, t);
  }
  return lines;
}

json witness_to_json(const AxiomVerdict& verdict) {
  json out = {{"passed", verdict.passed}};
  if (verdict.witness) {
    const AxiomWitness& w = *verdict.witness;
    out["witness"] = {{"i", w.i},
                      {"j", w.j},
                      {"k", w.k},
                      {"t", number_to_json(w.t)},
                      {"s", number_to_json(w.s)},
                      {"lhs", number_to_json(w.lhs)},
                      {"rhs", number_to_json(w.rhs)}};
  }
  return out;
}

json condition_to_json(const ConditionVerdict& item) {
  json out = {{"passed", item.passed}};
  if (!item.passed) {
    out["detail"] = item.detail;
    out["witness"] = number_to_json(item.witness.value_or(0.0));
    out["witness_value"] = number_to_json(item.witness_value);
  }
  return out;
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number, got " + j.dump());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

json to_json(const MonotoneFunction& phi) {
  return std::visit(
      Overloaded{
          [](const Clamp& c) -> json {
            return {{"kind", "clamp"}, {"scale", c.scale}, {"cap", c.cap}};
          },
          [](const Linear& l) -> json { return {{"kind", "linear"}, {"slope", l.slope}}; },
          [](const PiecewiseLinear& p) -> json {
            json knots = json::array();
            for (const Knot& k : p.knots) knots.push_back({k.x, k.y});
            return {{"kind", "piecewise_linear"}, {"breakpoints", knots}};
          },
          [](const RationalSaturating&) -> json { return {{"kind", "rational_saturating"}}; },
          [](const CustomMonotone&) -> json {
            throw ConfigError("custom monotone functions cannot be serialized");
          },
      },
      phi.representation());
}

MonotoneFunction monotone_from_json(const json& j) {
  const std::string kind = kind_of(j, "phi");
  try {
    if (kind == "clamp") {
      return MonotoneFunction::clamp(number_from_json(field(j, "scale", "phi")),
                                     number_from_json(field(j, "cap", "phi")));
    }
    if (kind == "linear") return MonotoneFunction::linear(number_from_json(field(j, "slope", "phi")));
    if (kind == "rational_saturating") return MonotoneFunction::rational_saturating();
    if (kind == "piecewise_linear") {
      std::vector<Knot> knots;
      for (const json& k : field(j, "breakpoints", "phi")) {
        if (!k.is_array() || k.size() != 2) throw ConfigError("phi: breakpoints are [x, y] pairs");
        knots.push_back({number_from_json(k[0]), number_from_json(k[1])});
      }
      return MonotoneFunction::piecewise_linear(std::move(knots));
    }
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("phi: ") + e.what());
  }
  throw ConfigError("phi: unknown kind '" + kind + "'");
}

json to_json(const Growth& h) {
  return std::visit(Overloaded{
                        [](const AffineGrowth& a) -> json {
                          return {{"kind", "affine"}, {"offset", a.offset}, {"slope", a.slope}};
                        },
                        [](const ExponentialGrowth& e) -> json {
                          return {{"kind", "exponential"}, {"offset", e.offset}};
                        },
                    },
                    h);
}

Growth growth_from_json(const json& j) {
  const std::string kind = kind_of(j, "h");
  Growth h;
  if (kind == "affine") {
    h = AffineGrowth{number_from_json(field(j, "offset", "h")),
                     number_from_json(field(j, "slope", "h"))};
  } else if (kind == "exponential") {
    h = ExponentialGrowth{number_from_json(field(j, "offset", "h"))};
  } else {
    throw ConfigError("h: unknown kind '" + kind + "'");
  }
  try {
    validate_growth(h);
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("h: ") + e.what());
  }
  return h;
}

json to_json(const TimeScaling& g) {
  return std::visit(Overloaded{
                        [](const TimeScaling::Constant& c) -> json {
                          return {{"kind", "constant"}, {"value", c.value}};
                        },
                        [](const TimeScaling::Reciprocal& r) -> json {
                          return {{"kind", "reciprocal"}, {"h", to_json(r.h)}};
                        },
                    },
                    g.representation());
}

TimeScaling time_scaling_from_json(const json& j) {
  const std::string kind = kind_of(j, "g");
  try {
    if (kind == "constant") return TimeScaling::constant(number_from_json(field(j, "value", "g")));
    if (kind == "reciprocal") return TimeScaling::reciprocal(growth_from_json(field(j, "h", "g")));
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("g: ") + e.what());
  }
  throw ConfigError("g: unknown kind '" + kind + "'");
}

json to_json(const EuclideanFuzzyMetric& m) {
  return {{"phi", to_json(m.phi())}, {"g", to_json(m.g())}, {"tnorm", std::string(m.tnorm().tag())}};
}

EuclideanFuzzyMetric euclidean_metric_from_json(const json& j) {
  const std::string tag = field(j, "tnorm", "codomain").get<std::string>();
  TNorm tnorm;
  try {
    tnorm = TNorm::from_tag(tag);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return EuclideanFuzzyMetric(monotone_from_json(field(j, "phi", "codomain")),
                              time_scaling_from_json(field(j, "g", "codomain")), tnorm);
}

json to_json(const CodomainConditionsReport& report) {
  return {{"passed", report.passed()},
          {"item1_zero_only_at_origin", condition_to_json(report.zero_only_at_origin)},
          {"item2_phi_bounded", condition_to_json(report.phi_bounded)},
          {"item3_g_bounded", condition_to_json(report.g_bounded)}};
}

json to_json(const FuzzyMetricReport& report) {
  return {{"passed", report.passed()},
          {"positivity", witness_to_json(report.positivity)},
          {"identity", witness_to_json(report.identity)},
          {"symmetry", witness_to_json(report.symmetry)},
          {"triangle", witness_to_json(report.triangle)},
          {"monotone_in_t", witness_to_json(report.monotone_in_t)},
          {"worst_triangle_slack", number_to_json(report.worst_triangle_slack)}};
}

json to_json(const GaloisReport& report) {
  json out = {{"passed", report.passed},
              {"unit_law_points", report.unit_law.size()},
              {"counit_law_points", report.counit_law.size()},
              {"counit_applicable", report.counit_applicable},
              {"worst_violation", number_to_json(report.worst_violation)}};
  json failures = json::array();
  for (const auto* law : {&report.unit_law, &report.counit_law}) {
    for (const GaloisEntry& e : *law) {
      if (e.pass) continue;
      failures.push_back({{"law", law == &report.unit_law ? "unit" : "counit"},
                          {"point", number_to_json(e.point)},
                          {"composed", number_to_json(e.composed)}});
      if (failures.size() >= 10) break;
    }
  }
  out["failures"] = failures;
  return out;
}

json to_json(const HypothesisReport& report) {
  json out = {{"t", number_to_json(report.t)},
              {"passed", report.passed},
              {"sup_phi", number_to_json(report.sup_phi)},
              {"worst_excess", number_to_json(report.worst_excess)}};
  if (report.worst_pair) out["worst_pair"] = {report.worst_pair->first, report.worst_pair->second};
  json failing = json::array();
  for (const PairVerdict& p : report.pairs) {
    if (!p.passed) failing.push_back({{"i", p.i}, {"j", p.j}, {"lhs", number_to_json(p.lhs)}});
  }
  out["failing_pairs"] = failing;
  return out;
}

json to_json(const LipschitzReport& report) {
  json out = {{"passed", report.passed},
              {"checks", report.checks},
              {"worst_slack", number_to_json(report.worst_slack)}};
  if (report.witness) {
    const LipschitzWitness& w = *report.witness;
    out["witness"] = {{"i", w.i},
                      {"j", w.j},
                      {"t", number_to_json(w.t)},
                      {"extension", std::string(1, w.which)},
                      {"lhs", number_to_json(w.lhs)},
                      {"rhs", number_to_json(w.rhs)}};
  }
  return out;
}

json to_json(const DilationEstimate& estimate, double t) {
  json out = {{"t", number_to_json(t)},
              {"K", number_to_json(estimate.value)},
              {"infimum", number_to_json(estimate.infimum)},
              {"degenerate", estimate.degenerate}};
  if (estimate.attained_by) {
    out["attained_by"] = {estimate.attained_by->first, estimate.attained_by->second};
  }
  return out;
}

json to_json(const TimeDiagnostics& d) {
  return {{"t", number_to_json(d.t)},
          {"K", number_to_json(d.k)},
          {"alpha", number_to_json(d.alpha)},
          {"hypothesis_passed", d.hypothesis.passed},
          {"infinite_rho", d.infinite_rho},
          {"infinite_chain", d.infinite_chain},
          {"rho_is_metric", d.rho_is_metric},
          {"achieved_constant", number_to_json(d.achieved_constant)},
          {"undefined_points", d.undefined_points}};
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
  const auto lines = data_lines(path);
  std::vector<std::vector<double>> rows;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const auto& [number, text] = lines[idx];
    const auto cells = split_csv(text);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : cells) {
      const auto v = parse_double(cell);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (idx == 0) continue;  // header row
      throw IoError(path, number, "non-numeric entry in metric matrix");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path, 0, "metric matrix file has no data rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      throw IoError(path, 0,
                    "metric matrix is not square: row " + std::to_string(r) + " has " +
                        std::to_string(rows[r].size()) + " entries for " +
                        std::to_string(rows.size()) + " rows");
    }
  }
  return rows;
}

std::vector<std::vector<double>> read_values_csv(const std::string& path,
                                                 const std::vector<std::size_t>& subset,
                                                 const std::vector<double>& t_grid,
                                                 bool stationary) {
  const auto lines = data_lines(path);
  if (lines.empty()) throw IoError(path, 0, "values file is empty");
  const auto header = split_csv(lines.front().second);
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto point_col = column("point");
  const auto value_col = column("value");
  const auto t_col = column("t");
  if (!point_col || !value_col) {
    throw IoError(path, lines.front().first, "header must name the columns point and value");
  }
  if (!t_col && !stationary) {
    throw IoError(path, lines.front().first, "a non-stationary map needs a t column");
  }

  const std::size_t width = stationary ? 1 : t_grid.size();
  std::vector<std::vector<std::optional<double>>> cells(subset.size(),
                                                        std::vector<std::optional<double>>(width));
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const auto& [number, text] = lines[idx];
    const auto row = split_csv(text);
    if (row.size() != header.size()) throw IoError(path, number, "wrong number of columns");
    const auto point = parse_double(row[*point_col]);
    const auto value = parse_double(row[*value_col]);
    if (!point || !value || *point < 0 || std::floor(*point) != *point) {
      throw IoError(path, number, "malformed point or value");
    }
    const auto s = std::find(subset.begin(), subset.end(), static_cast<std::size_t>(*point));
    if (s == subset.end()) throw IoError(path, number, "point is not in the sample subset");
    const auto a = static_cast<std::size_t>(s - subset.begin());
    std::size_t b = 0;
    if (t_col) {
      const auto t = parse_double(row[*t_col]);
      const auto it = t ? std::find(t_grid.begin(), t_grid.end(), *t) : t_grid.end();
      if (it == t_grid.end()) throw IoError(path, number, "t is not on the configured t-grid");
      if (!stationary) b = static_cast<std::size_t>(it - t_grid.begin());
    }
    auto& slot = cells[a][b];
    if (slot && (!stationary || *slot != *value)) {
      throw IoError(path, number,
                    stationary ? "stationary map has different values across t"
                               : "duplicate (point, t) entry");
    }
    slot = *value;
  }

  std::vector<std::vector<double>> values(subset.size(), std::vector<double>(width));
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = 0; b < width; ++b) {
      if (!cells[a][b]) {
        throw IoError(path, 0, "missing value for point " + std::to_string(subset[a]));
      }
      values[a][b] = *cells[a][b];
    }
  }
  return values;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, 0, "cannot open file for writing");
  out << contents;
  if (!out) throw IoError(path, 0, "write failed");
}

}  // namespace fuzzylip::cli
