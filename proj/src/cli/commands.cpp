#include "fuzzylip/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace fuzzylip::cli {

namespace {

namespace fs = std::filesystem;

json base_report(const char* command, const RunConfig& config, const CommandOptions& options) {
  return {{"tool", "fuzzylip"},
          {"command", command},
          {"config", to_json(config)},
          {"tolerance", options.tolerance},
          {"seed", options.seed}};
}

void stamp_timing(json& report, std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
}

std::vector<double> validation_distances(const RunConfig& config, const CommandOptions& options,
                                         const MonotoneFunction& phi) {
  std::vector<double> grid = config.validation.x_grid;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 10.0);
  for (std::size_t i = 0; i < config.validation.random_samples; ++i) grid.push_back(uniform(rng));
  grid.push_back(0.0);
  // Points inside the range of phi exercise the counit law.
  const double sup = phi.sup_value().value();
  if (std::isfinite(sup)) {
    for (int i = 0; i <= 20; ++i) grid.push_back(sup * i / 20.0);
  }
  std::set<double> unique(grid.begin(), grid.end());
  return {unique.begin(), unique.end()};
}

std::string pair_text(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  if (!p) return "(none)";
  return fmt::format("({}, {})", p->first, p->second);
}

std::string build_csv(const ExtensionResult& result) {
  std::string csv = "point,t,f_M,f_W,f_alpha\n";
  for (const ExtensionRow& row : result.rows) {
    csv += fmt::format("{},{},{},{},{}\n", row.point, format_number(row.t), format_number(row.f_m),
                       format_number(row.f_w), format_number(row.f_alpha));
  }
  return csv;
}

std::string text_or_number(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return format_number(j.get<double>());
  return j.dump();
}

}  // namespace

double default_tolerance_from_env() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(kToleranceEnv) + " is not a non-negative number: " + raw);
  }
  return value;
}

CommandOutcome cmd_validate(const RunConfig& config, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CommandOutcome outcome;
  outcome.report = base_report("validate", config, options);

  const FiniteFuzzyMetricSpace space = build_space(config);
  if (space.size() < 2) throw ConfigError("space: validation needs at least 2 points");
  const auto& vc = config.validation;
  if (vc.t_grid.empty() || vc.s_grid.empty() || vc.x_grid.empty()) {
    throw ConfigError("validation grids must be non-empty");
  }

  json validation;
  bool passed = true;

  const auto distances = validation_distances(config, options, config.codomain.phi());
  const CodomainConditionsReport codomain_report =
      validate_codomain_conditions(config.codomain, distances, vc.t_grid, options.tolerance);
  validation["codomain_conditions"] = to_json(codomain_report);
  if (!codomain_report.passed()) {
    passed = false;
    for (const auto* item : {&codomain_report.zero_only_at_origin, &codomain_report.phi_bounded,
                             &codomain_report.g_bounded}) {
      if (item->passed) continue;
      const int number = item == &codomain_report.zero_only_at_origin ? 1
                         : item == &codomain_report.phi_bounded       ? 2
                                                                      : 3;
      outcome.messages.push_back(fmt::format("codomain condition ({}) fails: {} at {} (value {})",
                                             number, item->detail,
                                             format_number(item->witness.value_or(0.0)),
                                             format_number(item->witness_value)));
    }
  }

  if (config.space.preset == "euclidean") {
    const auto space_distances = validation_distances(config, options, config.space.euclidean.phi());
    const CodomainConditionsReport space_report =
        validate_codomain_conditions(config.space.euclidean, space_distances, vc.t_grid, options.tolerance);
    validation["space_conditions"] = to_json(space_report);
    if (!space_report.passed()) {
      passed = false;
      outcome.messages.push_back("space metric conditions fail");
    }
  }

  const FuzzyMetricReport axioms =
      validate_fuzzy_metric(space, vc.t_grid, vc.s_grid, options.tolerance);
  validation["fuzzy_metric"] = to_json(axioms);
  if (!axioms.passed()) {
    passed = false;
    const std::pair<const char*, const AxiomVerdict*> verdicts[] = {
        {"positivity", &axioms.positivity},
        {"identity", &axioms.identity},
        {"symmetry", &axioms.symmetry},
        {"triangle", &axioms.triangle},
        {"monotone_in_t", &axioms.monotone_in_t}};
    for (const auto& [name, verdict] : verdicts) {
      if (verdict->passed || !verdict->witness) continue;
      const AxiomWitness& w = *verdict->witness;
      outcome.messages.push_back(fmt::format(
          "fuzzy metric axiom {} fails at i={} j={} k={} t={} s={}: {} vs {}", name, w.i, w.j, w.k,
          format_number(w.t), format_number(w.s), format_number(w.lhs), format_number(w.rhs)));
    }
  }

  const GaloisReport galois = check_galois(config.codomain.phi(), distances, options.tolerance);
  validation["galois"] = to_json(galois);
  if (!galois.passed) {
    passed = false;
    outcome.messages.push_back(fmt::format("Galois laws fail (worst violation {})",
                                           format_number(galois.worst_violation)));
  }

  validation["passed"] = passed;
  outcome.report["validation"] = validation;
  outcome.exit_code = passed ? kExitSuccess : kExitValidationFailure;
  outcome.report["exit_code"] = outcome.exit_code;
  stamp_timing(outcome.report, start);
  return outcome;
}

CommandOutcome cmd_extend(const RunConfig& config, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CommandOutcome outcome;
  outcome.report = base_report("extend", config, options);

  const FiniteFuzzyMetricSpace space = build_space(config);
  const SampledMap f = build_samples(config);
  const AlphaSchedule alpha = build_alpha(config);
  try {
    f.check_indices(space.size());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("samples: ") + e.what());
  }
  const std::vector<double>& t_grid = f.t_grid();

  // Dilation, estimated per t or taken from the configuration.
  json dilation = json::array();
  DilationFunction k = DilationFunction::constant(1.0);
  try {
    if (config.dilation.estimate) {
      std::vector<double> values;
      for (double t : t_grid) {
        if (f.size() < 2) {
          values.push_back(kDegenerateDilationFloor);
          dilation.push_back({{"t", t}, {"K", kDegenerateDilationFloor}, {"degenerate", true}});
          continue;
        }
        const DilationEstimate estimate = estimate_dilation(space, config.codomain, f, t);
        values.push_back(estimate.value);
        dilation.push_back(to_json(estimate, t));
      }
      k = DilationFunction::tabulated(t_grid, values);
    } else if (config.dilation.values.size() == 1) {
      k = DilationFunction::constant(config.dilation.values.front());
    } else {
      k = DilationFunction::tabulated(t_grid, config.dilation.values);
    }
  } catch (const InfeasibleError& e) {
    outcome.report["error"] = e.what();
    outcome.messages.push_back(e.what());
    outcome.exit_code = kExitHypothesisFailure;
    outcome.report["exit_code"] = outcome.exit_code;
    stamp_timing(outcome.report, start);
    return outcome;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("dilation: ") + e.what());
  }
  if (!config.dilation.estimate) {
    for (double t : t_grid) dilation.push_back({{"t", t}, {"K", k(t)}});
  }
  outcome.report["dilation"] = dilation;

  std::vector<std::size_t> all_points(space.size());
  for (std::size_t i = 0; i < all_points.size(); ++i) all_points[i] = i;
  std::vector<std::size_t> queries;
  if (config.queries.all) {
    queries = all_points;
  } else {
    queries = config.queries.indices;
    for (std::size_t i = config.space.coordinates.size(); i < space.size(); ++i) {
      if (config.space.preset == "euclidean") queries.push_back(i);
    }
  }
  for (std::size_t q : queries) {
    if (q >= space.size()) throw ConfigError(fmt::format("query point {} out of range", q));
  }

  const ExtensionResult full = extend(space, config.codomain, f, k, alpha, all_points,
                                      ExtensionOptions{config.distance});

  json hypothesis = json::array();
  for (const TimeDiagnostics& d : full.diagnostics) {
    hypothesis.push_back(to_json(d.hypothesis));
    if (!d.hypothesis.passed) {
      outcome.messages.push_back(fmt::format(
          "hypothesis fails at t={}: pair {} exceeds sup phi by {}", format_number(d.t),
          pair_text(d.hypothesis.worst_pair), format_number(d.hypothesis.worst_excess)));
    }
  }
  outcome.report["hypothesis"] = {{"passed", full.hypothesis_passed()}, {"per_t", hypothesis}};

  ExtensionResult selected;
  selected.queries = queries;
  selected.t_grid = full.t_grid;
  selected.diagnostics = full.diagnostics;
  json undefined = json::array();
  for (std::size_t ti = 0; ti < full.t_grid.size(); ++ti) {
    for (std::size_t q : queries) {
      const ExtensionRow& row = *full.find(q, ti);
      selected.rows.push_back(row);
      if (!row.defined) undefined.push_back({{"point", q}, {"t", number_to_json(row.t)}});
    }
  }

  json rows = json::array();
  for (const ExtensionRow& row : selected.rows) {
    rows.push_back({{"point", row.point},
                    {"t", number_to_json(row.t)},
                    {"f_M", number_to_json(row.f_m)},
                    {"f_W", number_to_json(row.f_w)},
                    {"f_alpha", number_to_json(row.f_alpha)}});
  }
  json diagnostics = json::array();
  for (const TimeDiagnostics& d : full.diagnostics) diagnostics.push_back(to_json(d));
  outcome.report["extension"] = {
      {"rows", rows}, {"diagnostics", diagnostics}, {"undefined_points", undefined}};
  outcome.csv = build_csv(selected);

  const LipschitzReport verification =
      verify_fuzzy_lipschitz(space, config.codomain, full, k, full.t_grid, options.tolerance);
  outcome.report["verification"] = to_json(verification);
  if (!verification.passed && verification.witness) {
    const LipschitzWitness& w = *verification.witness;
    outcome.messages.push_back(fmt::format(
        "fuzzy Lipschitz verification fails for f^{} at pair ({}, {}), t={}: {} > {}", w.which, w.i,
        w.j, format_number(w.t), format_number(w.lhs), format_number(w.rhs)));
  }

  if (!full.hypothesis_passed() || !undefined.empty()) {
    outcome.exit_code = kExitHypothesisFailure;
  } else if (!verification.passed) {
    outcome.exit_code = kExitValidationFailure;
  }
  outcome.report["exit_code"] = outcome.exit_code;
  stamp_timing(outcome.report, start);
  return outcome;
}

std::string summarize_report(const json& report) {
  if (!report.is_object() || !report.contains("command")) {
    throw ConfigError("report is missing its command field");
  }
  std::ostringstream out;
  auto verdict = [](bool passed) { return passed ? "PASS" : "FAIL"; };
  out << "fuzzylip " << report.at("command").get<std::string>() << " report\n";

  if (report.contains("validation")) {
    const json& v = report.at("validation");
    for (const char* section : {"codomain_conditions", "space_conditions"}) {
      if (!v.contains(section)) continue;
      const json& r = v.at(section);
      out << "[" << verdict(r.at("passed").get<bool>()) << "] " << section << "\n";
      for (const char* item : {"item1_zero_only_at_origin", "item2_phi_bounded", "item3_g_bounded"}) {
        const json& it = r.at(item);
        if (it.at("passed").get<bool>()) continue;
        out << "    " << item << ": " << it.at("detail").get<std::string>() << " (witness "
            << text_or_number(it.at("witness")) << ", value "
            << text_or_number(it.at("witness_value")) << ")\n";
      }
    }
    const json& fm = v.at("fuzzy_metric");
    out << "[" << verdict(fm.at("passed").get<bool>()) << "] fuzzy_metric (worst triangle slack "
        << text_or_number(fm.at("worst_triangle_slack")) << ")\n";
    for (const char* axiom : {"positivity", "identity", "symmetry", "triangle", "monotone_in_t"}) {
      const json& a = fm.at(axiom);
      if (a.at("passed").get<bool>() || !a.contains("witness")) continue;
      const json& w = a.at("witness");
      out << "    " << axiom << ": i=" << w.at("i") << " j=" << w.at("j") << " k=" << w.at("k")
          << " t=" << text_or_number(w.at("t")) << " s=" << text_or_number(w.at("s"))
          << " lhs=" << text_or_number(w.at("lhs")) << " rhs=" << text_or_number(w.at("rhs"))
          << "\n";
    }
    const json& g = v.at("galois");
    out << "[" << verdict(g.at("passed").get<bool>()) << "] galois (worst violation "
        << text_or_number(g.at("worst_violation")) << ")\n";
    for (const json& f : g.at("failures")) {
      out << "    " << f.at("law").get<std::string>() << " law at " << text_or_number(f.at("point"))
          << ": composed " << text_or_number(f.at("composed")) << "\n";
    }
  }

  if (report.contains("hypothesis")) {
    const json& h = report.at("hypothesis");
    out << "[" << verdict(h.at("passed").get<bool>()) << "] hypothesis\n";
    for (const json& per_t : h.at("per_t")) {
      out << "    t=" << text_or_number(per_t.at("t"))
          << " worst excess=" << text_or_number(per_t.at("worst_excess"));
      if (per_t.contains("worst_pair")) out << " pair=" << per_t.at("worst_pair").dump();
      out << (per_t.at("passed").get<bool>() ? "" : "  <-- violated") << "\n";
    }
  }
  if (report.contains("dilation")) {
    for (const json& d : report.at("dilation")) {
      out << "    K(" << text_or_number(d.at("t")) << ") = " << text_or_number(d.at("K")) << "\n";
    }
  }
  if (report.contains("verification")) {
    const json& v = report.at("verification");
    out << "[" << verdict(v.at("passed").get<bool>()) << "] fuzzy_lipschitz ("
        << v.at("checks") << " checks, worst slack " << text_or_number(v.at("worst_slack")) << ")\n";
    if (v.contains("witness")) {
      const json& w = v.at("witness");
      out << "    witness: f^" << w.at("extension").get<std::string>() << " pair (" << w.at("i")
          << ", " << w.at("j") << ") t=" << text_or_number(w.at("t"))
          << " lhs=" << text_or_number(w.at("lhs")) << " rhs=" << text_or_number(w.at("rhs"))
          << "\n";
    }
  }
  if (report.contains("extension")) {
    const json& undefined = report.at("extension").at("undefined_points");
    if (!undefined.empty()) out << "    undefined extension points: " << undefined.dump() << "\n";
  }
  if (report.contains("error")) out << "[FAIL] " << report.at("error").get<std::string>() << "\n";
  if (report.contains("exit_code")) out << "exit code " << report.at("exit_code") << "\n";
  return out.str();
}

std::string cmd_report(const std::string& report_path) {
  const std::string text = read_text_file(report_path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw IoError(report_path, 0, "corrupt report: file is empty");
  }
  try {
    return summarize_report(json::parse(text));
  } catch (const json::exception& e) {
    throw IoError(report_path, 0, std::string("corrupt report: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(report_path, 0, std::string("corrupt report: ") + e.what());
  }
}

void write_outcome(const CommandOutcome& outcome, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir, 0, "cannot create output directory: " + ec.message());
  write_text_file((fs::path(out_dir) / "report.json").string(), outcome.report.dump(2) + "\n");
  if (outcome.csv) write_text_file((fs::path(out_dir) / "extension.csv").string(), *outcome.csv);
}

}  // namespace fuzzylip::cli
