#include "fuzzylip/cli/config.hpp"

#include <filesystem>

namespace fuzzylip::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> numbers(const json& j, const char* context) {
  if (!j.is_array()) throw ConfigError(std::string(context) + " must be an array of numbers");
  std::vector<double> out;
  for (const json& v : j) out.push_back(number_from_json(v));
  return out;
}

std::vector<std::vector<double>> number_rows(const json& j, const char* context) {
  if (!j.is_array()) throw ConfigError(std::string(context) + " must be an array of rows");
  std::vector<std::vector<double>> out;
  for (const json& row : j) out.push_back(numbers(row, context));
  return out;
}

std::vector<std::size_t> indices(const json& j, const char* context) {
  if (!j.is_array()) throw ConfigError(std::string(context) + " must be an array of indices");
  std::vector<std::size_t> out;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(std::string(context) + " entries must be non-negative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

json values_or_scalar(const std::vector<double>& values) {
  if (values.size() == 1) return number_to_json(values.front());
  json out = json::array();
  for (double v : values) out.push_back(number_to_json(v));
  return out;
}

std::vector<double> scalar_or_values(const json& j, const char* context) {
  if (j.is_array()) return numbers(j, context);
  return {number_from_json(j)};
}

std::string resolve(const RunConfig& config, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(config.base_dir) / p).string();
}

MetricSource metric_from_json(const json& j) {
  MetricSource source;
  int count = 0;
  if (j.contains("matrix")) {
    source.matrix = number_rows(j.at("matrix"), "metric.matrix");
    ++count;
  }
  if (j.contains("points")) {
    source.points = number_rows(j.at("points"), "metric.points");
    ++count;
  }
  if (j.contains("file")) {
    source.file = j.at("file").get<std::string>();
    ++count;
  }
  if (count != 1) throw ConfigError("metric: give exactly one of matrix, points or file");
  return source;
}

json metric_to_json(const MetricSource& m) {
  if (m.matrix) return {{"matrix", *m.matrix}};
  if (m.points) return {{"points", *m.points}};
  return {{"file", m.file.value_or("")}};
}

MetricMatrix build_metric(const RunConfig& config) {
  const MetricSource& m = config.space.metric;
  try {
    if (m.matrix) return MetricMatrix::from_rows(*m.matrix);
    if (m.points) return MetricMatrix::from_points(*m.points);
    if (m.file) return MetricMatrix::from_rows(read_matrix_csv(resolve(config, *m.file)));
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("metric: ") + e.what());
  }
  throw ConfigError("metric: no source given");
}

}  // namespace

RunConfig parse_config(const json& doc, const std::string& base_dir) {
  RunConfig config;
  config.base_dir = base_dir;
  try {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

    const json& space = doc.at("space");
    config.space.preset = space.at("preset").get<std::string>();
    const std::string& preset = config.space.preset;
    if (preset == "mk" || preset == "exp") {
      config.space.metric = metric_from_json(space.at("metric"));
      if (preset == "mk") {
        config.space.k = number_from_json(space.at("k"));
        config.space.h = growth_from_json(space.at("h"));
      }
    } else if (preset == "euclidean") {
      config.space.coordinates = numbers(space.at("coordinates"), "space.coordinates");
      if (space.contains("metric")) {
        config.space.euclidean = euclidean_metric_from_json(space.at("metric"));
      }
    } else if (preset == "table") {
      config.space.table_tnorm = TNorm::from_tag(space.at("tnorm").get<std::string>());
      for (const json& table : space.at("tables")) {
        config.space.tables.push_back({number_from_json(table.at("t")),
                                       number_rows(table.at("membership"), "membership")});
      }
    } else {
      throw ConfigError("space.preset must be mk, exp, euclidean or table, got '" + preset + "'");
    }

    if (doc.contains("codomain")) config.codomain = euclidean_metric_from_json(doc.at("codomain"));

    if (doc.contains("samples")) {
      const json& samples = doc.at("samples");
      config.samples.subset = indices(samples.at("subset"), "samples.subset");
      config.samples.t_grid = numbers(samples.at("t_grid"), "samples.t_grid");
      config.samples.stationary = samples.value("stationary", false);
      if (samples.contains("values_file")) {
        config.samples.values_file = samples.at("values_file").get<std::string>();
      } else if (samples.contains("values")) {
        const json& values = samples.at("values");
        if (config.samples.stationary && !values.empty() && !values.front().is_array()) {
          std::vector<std::vector<double>> rows;
          for (double v : numbers(values, "samples.values")) rows.push_back({v});
          config.samples.values = rows;
        } else {
          config.samples.values = number_rows(values, "samples.values");
        }
      } else {
        throw ConfigError("samples: give values or values_file");
      }
    }

    if (doc.contains("dilation")) {
      const json& d = doc.at("dilation");
      if (d.is_string() && d.get<std::string>() == "estimate") {
        config.dilation = {true, {}};
      } else {
        config.dilation = {false, scalar_or_values(d, "dilation")};
      }
    }

    if (doc.contains("alpha")) config.alpha = scalar_or_values(doc.at("alpha"), "alpha");
    for (double a : config.alpha) {
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha values must lie in [0,1]");
    }

    if (doc.contains("queries")) {
      const json& q = doc.at("queries");
      if (q.is_string() && q.get<std::string>() == "all") {
        config.queries = {};
      } else if (q.is_object()) {
        config.queries.all = !q.contains("indices");
        if (q.contains("indices")) config.queries.indices = indices(q.at("indices"), "queries");
        if (q.contains("coordinates")) {
          config.queries.coordinates = numbers(q.at("coordinates"), "queries.coordinates");
        }
      } else {
        config.queries.all = false;
        config.queries.indices = indices(q, "queries");
      }
    }
    if (!config.queries.coordinates.empty() && preset != "euclidean") {
      throw ConfigError("query coordinates are only meaningful for the euclidean preset");
    }

    if (doc.contains("validation")) {
      const json& v = doc.at("validation");
      if (v.contains("t_grid")) config.validation.t_grid = numbers(v.at("t_grid"), "t_grid");
      if (v.contains("s_grid")) config.validation.s_grid = numbers(v.at("s_grid"), "s_grid");
      if (v.contains("x_grid")) config.validation.x_grid = numbers(v.at("x_grid"), "x_grid");
      config.validation.random_samples = v.value("random_samples", config.validation.random_samples);
    }

    if (doc.contains("distance")) {
      const std::string d = doc.at("distance").get<std::string>();
      if (d == "rho") {
        config.distance = ExtensionDistance::rho;
      } else if (d == "chain") {
        config.distance = ExtensionDistance::chain;
      } else {
        throw ConfigError("distance must be rho or chain");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(path, 0, std::string("invalid JSON: ") + e.what());
  }
  const fs::path parent = fs::path(path).parent_path();
  return parse_config(doc, parent.empty() ? "." : parent.string());
}

json to_json(const RunConfig& config) {
  const SpaceConfig& s = config.space;
  json space = {{"preset", s.preset}};
  if (s.preset == "mk" || s.preset == "exp") space["metric"] = metric_to_json(s.metric);
  if (s.preset == "mk") {
    space["k"] = number_to_json(s.k);
    space["h"] = to_json(s.h);
  }
  if (s.preset == "euclidean") {
    space["coordinates"] = s.coordinates;
    space["metric"] = to_json(s.euclidean);
  }
  if (s.preset == "table") {
    space["tnorm"] = std::string(s.table_tnorm.tag());
    json tables = json::array();
    for (const auto& t : s.tables) tables.push_back({{"t", t.start_t}, {"membership", t.membership}});
    space["tables"] = tables;
  }

  json doc = {{"space", space}, {"codomain", to_json(config.codomain)}};
  if (!config.samples.subset.empty()) {
    json samples = {{"subset", config.samples.subset},
                    {"t_grid", config.samples.t_grid},
                    {"stationary", config.samples.stationary}};
    if (config.samples.values_file) samples["values_file"] = *config.samples.values_file;
    if (config.samples.values) samples["values"] = *config.samples.values;
    doc["samples"] = samples;
  }
  doc["dilation"] = config.dilation.estimate ? json("estimate") : values_or_scalar(config.dilation.values);
  doc["alpha"] = values_or_scalar(config.alpha);
  if (config.queries.all && config.queries.coordinates.empty()) {
    doc["queries"] = "all";
  } else {
    json q = json::object();
    if (!config.queries.all) q["indices"] = config.queries.indices;
    if (!config.queries.coordinates.empty()) q["coordinates"] = config.queries.coordinates;
    doc["queries"] = q;
  }
  doc["validation"] = {{"t_grid", config.validation.t_grid},
                       {"s_grid", config.validation.s_grid},
                       {"x_grid", config.validation.x_grid},
                       {"random_samples", config.validation.random_samples}};
  doc["distance"] = config.distance == ExtensionDistance::rho ? "rho" : "chain";
  return doc;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

FiniteFuzzyMetricSpace build_space(const RunConfig& config) {
  const SpaceConfig& s = config.space;
  try {
    if (s.preset == "mk") return make_mk_space(build_metric(config), s.k, s.h);
    if (s.preset == "exp") return make_exp_space(build_metric(config));
    if (s.preset == "euclidean") {
      std::vector<double> coordinates = s.coordinates;
      coordinates.insert(coordinates.end(), config.queries.coordinates.begin(),
                         config.queries.coordinates.end());
      if (coordinates.empty()) throw ConfigError("space: the point set is empty");
      return make_euclidean_space(s.euclidean, std::move(coordinates));
    }
    if (s.preset == "table") return make_table_space(s.tables, s.table_tnorm);
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
  throw ConfigError("space: unknown preset '" + s.preset + "'");
}

SampledMap build_samples(const RunConfig& config) {
  const SampleConfig& s = config.samples;
  if (s.subset.empty()) throw ConfigError("samples: S must be non-empty");
  std::vector<std::vector<double>> values =
      s.values_file ? read_values_csv(resolve(config, *s.values_file), s.subset, s.t_grid,
                                      s.stationary)
                    : s.values.value_or(std::vector<std::vector<double>>{});
  try {
    if (s.stationary) {
      std::vector<double> flat;
      for (const auto& row : values) {
        if (row.size() != 1) throw ConfigError("samples: stationary maps take one value per point");
        flat.push_back(row.front());
      }
      return SampledMap::stationary(s.subset, std::move(flat), s.t_grid);
    }
    return SampledMap(s.subset, s.t_grid, std::move(values));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("samples: ") + e.what());
  }
}

AlphaSchedule build_alpha(const RunConfig& config) {
  try {
    if (config.alpha.size() == 1) return AlphaSchedule::constant(config.alpha.front());
    return AlphaSchedule::tabulated(config.samples.t_grid, config.alpha);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("alpha: ") + e.what());
  }
}

}  // namespace fuzzylip::cli
