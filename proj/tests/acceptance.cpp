// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzylip/cli/commands.hpp"
#include "fuzzylip/extension.hpp"
#include "fuzzylip/monotone.hpp"
#include "support/oracles.hpp"

namespace {

using namespace fuzzylip;
using namespace fuzzylip::testing;
using fuzzylip::cli::json;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

// Runs a criterion, adds the runtime bound to the verdict and prints one line.
bool run(int number, const char* title, double max_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.fail(std::string("unexpected exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (max_seconds > 0.0 && seconds >= max_seconds) {
    outcome.fail("runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(max_seconds) + " s");
  }
  std::printf("criterion %d: %s  %s  (%.3f s)%s%s\n", number, outcome.passed ? "PASS" : "FAIL", title,
              seconds, outcome.passed ? "" : "  ", outcome.detail.c_str());
  return outcome.passed;
}

std::string str(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

Outcome galois_suite() {
  Outcome out;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> step(0.1, 1.0);
  std::vector<Knot> knots{{0.0, 0.0}};
  for (int i = 0; i < 4; ++i) knots.push_back({knots.back().x + step(rng), knots.back().y + step(rng)});
  const std::vector<MonotoneFunction> phis{MonotoneFunction::clamp(2, 1), MonotoneFunction::linear(0.7),
                                           MonotoneFunction::rational_saturating(),
                                           MonotoneFunction::piecewise_linear(knots)};
  const std::vector<double> grid = log_grid(1e-6, 1e6, 1000);
  for (const MonotoneFunction& phi : phis) {
    for (double x : grid) {
      const double back = right_adjoint_eval(phi, ExtendedNonNegative(phi(x))).value();
      if (!(x <= back)) out.fail(std::string(phi.kind_name()) + ": unit law fails at " + str(x));
    }
    for (double y : grid) {
      const double forth = phi(right_adjoint_eval(phi, ExtendedNonNegative(y)).value());
      if (!(forth <= y + 1e-9)) out.fail(std::string(phi.kind_name()) + ": counit law fails at " + str(y));
    }
  }
  return out;
}

Outcome clamp_adjoint() {
  Outcome out;
  const auto phi = MonotoneFunction::clamp(2, 1);
  for (double y : {0.0, 0.1, 0.25, 0.49}) {
    const double v = right_adjoint_eval(phi, ExtendedNonNegative(y)).value();
    if (v != 2.0 * y) out.fail("phi*(" + str(y) + ") = " + str(v) + ", expected " + str(2.0 * y));
  }
  for (double y : {0.5, 0.6, 10.0}) {
    const auto v = right_adjoint_eval(phi, ExtendedNonNegative(y));
    if (!v.is_infinite()) out.fail("phi*(" + str(y) + ") = " + str(v.value()) + ", expected +inf");
  }
  return out;
}

Outcome chain_oracle() {
  Outcome out;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(2, 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t infinite_entries = 0;
  const auto codomain = EuclideanFuzzyMetric::standard();
  for (int trial = 0; trial < 50; ++trial) {
    const MetricMatrix d = random_metric(rng, size(rng));
    const double k = 0.5 + 1.5 * unit(rng);
    const auto space = make_mk_space(d, k, AffineGrowth{k + 0.5 * unit(rng), 0.5 + unit(rng)});
    // Large dilations push some edges past sup phi, giving +inf weights.
    const auto dilation = DilationFunction::constant(0.2 + 2.0 * unit(rng));
    const double t = 0.1 + 3.0 * unit(rng);
    const DistanceMatrix rho = rho_matrix(space, codomain, dilation, t);
    const Weights w = as_weights(rho);
    for (const auto& row : w) infinite_entries += std::count(row.begin(), row.end(), kInf);
    const Weights expected = brute_force_chains(w);
    const Weights actual = as_weights(chain_pseudometric(space, codomain, dilation, t));
    if (actual != expected) out.fail("mismatch on trial " + std::to_string(trial));
  }
  if (infinite_entries == 0) out.fail("no +inf weights were generated");
  return out;
}

// Instances shared by criteria 4 and 5.
struct Pipeline {
  Instance instance;
  DilationFunction k = DilationFunction::constant(1.0);
  ExtensionResult result;
  bool hypothesis = true;
};

std::vector<Pipeline> build_pipelines() {
  std::vector<Pipeline> runs;
  std::mt19937_64 rng(404);
  const auto codomain = EuclideanFuzzyMetric::standard();
  for (int i = 0; i < 100; ++i) {
    Pipeline p;
    p.instance = random_instance(rng, i % 2 == 0 ? Preset::truncated : Preset::exponential, 3, 8);
    const auto space = p.instance.space();
    const SampledMap f = p.instance.map();
    std::vector<double> ks;
    for (double t : f.t_grid()) ks.push_back(estimate_dilation(space, codomain, f, t).value);
    p.k = DilationFunction::tabulated(f.t_grid(), ks);
    for (double t : f.t_grid()) p.hypothesis = p.hypothesis && check_hypothesis(space, codomain, p.k, t).passed;
    std::vector<std::size_t> all(space.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    p.result = extend(space, codomain, f, p.k, AlphaSchedule::constant(0.5), all);
    runs.push_back(std::move(p));
  }
  return runs;
}

Outcome lipschitz_end_to_end(const std::vector<Pipeline>& runs) {
  Outcome out;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Pipeline& p = runs[r];
    const Instance& inst = p.instance;
    for (std::size_t ti = 0; ti < inst.t_grid.size(); ++ti) {
      const double t = inst.t_grid[ti];
      if (!(p.k(t) < 0.5)) out.fail("instance " + std::to_string(r) + ": K(t) = " + str(p.k(t)) + " >= 1/2");
    }
    if (!p.hypothesis) out.fail("instance " + std::to_string(r) + ": hypothesis check failed");
    for (std::size_t ti = 0; ti < inst.t_grid.size(); ++ti) {
      const double t = inst.t_grid[ti];
      const double kt = p.k(t);
      for (std::size_t x = 0; x < inst.d.size(); ++x) {
        for (std::size_t y = 0; y < inst.d.size(); ++y) {
          const ExtensionRow& a = *p.result.find(x, ti);
          const ExtensionRow& b = *p.result.find(y, ti);
          const double rhs = kt * inst.gap(x, y, t) + 1e-9;
          if (!(standard_codomain_gap(a.f_m, b.f_m) <= rhs) || !(standard_codomain_gap(a.f_w, b.f_w) <= rhs)) {
            out.fail("instance " + std::to_string(r) + ": pair (" + std::to_string(x) + ", " +
                     std::to_string(y) + ") at t = " + str(t));
          }
        }
      }
    }
  }
  return out;
}

Outcome agreement_and_sandwich(const std::vector<Pipeline>& runs) {
  Outcome out;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Pipeline& p = runs[r];
    const Instance& inst = p.instance;
    for (std::size_t ti = 0; ti < inst.t_grid.size(); ++ti) {
      for (std::size_t x = 0; x < inst.d.size(); ++x) {
        const ExtensionRow& row = *p.result.find(x, ti);
        if (!(row.f_m <= row.f_w + 1e-12)) {
          out.fail("instance " + std::to_string(r) + ": f^M > f^W at point " + std::to_string(x));
        }
      }
      for (std::size_t s = 0; s < inst.subset.size(); ++s) {
        const ExtensionRow& row = *p.result.find(inst.subset[s], ti);
        const double f = inst.values[s][ti];
        if (row.f_m != f || row.f_w != f) {
          out.fail("instance " + std::to_string(r) + ": disagreement on S at point " +
                   std::to_string(inst.subset[s]) + " (" + str(row.f_m) + ", " + str(row.f_w) +
                   " vs " + str(f) + ")");
        }
      }
    }
  }
  return out;
}

Outcome closed_forms() {
  Outcome out;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto codomain = EuclideanFuzzyMetric::standard();
  auto compare = [&](const char* which, int trial, std::pair<double, double> closed, double fm, double fw) {
    if (std::abs(closed.first - fm) > 1e-12 || std::abs(closed.second - fw) > 1e-12) {
      out.fail(std::string(which) + " trial " + std::to_string(trial) + ": closed form (" +
               str(closed.first) + ", " + str(closed.second) + ") vs pipeline (" + str(fm) + ", " + str(fw) + ")");
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, Preset::truncated, 3, 8);
    const auto space = inst.space();
    const SampledMap f = inst.map();
    // Q(t) min(d,k) < 1/2 for every pair.
    const double q = 0.49 * unit(rng) / inst.k;
    for (double t : inst.t_grid) {
      const auto dilation = DilationFunction::constant(q * (inst.h.offset + inst.h.slope * t));
      const DistanceMatrix rho = rho_matrix(space, codomain, dilation, t);
      for (std::size_t x = 0; x < inst.d.size(); ++x) {
        compare("truncated", trial, truncated_closed_form(inst.d, inst.k, q, f, x, t),
                mcshane_extend(f, rho, x, t), whitney_extend(f, rho, x, t));
      }
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, Preset::exponential, 3, 8);
    const auto space = inst.space();
    const SampledMap f = inst.map();
    const double k = 0.001 + 0.498 * unit(rng);
    const auto dilation = DilationFunction::constant(k);
    for (double t : inst.t_grid) {
      const DistanceMatrix rho = rho_matrix(space, codomain, dilation, t);
      for (std::size_t x = 0; x < inst.d.size(); ++x) {
        compare("exponential", trial, exponential_closed_form(inst.d, k, f, x, t),
                mcshane_extend(f, rho, x, t), whitney_extend(f, rho, x, t));
      }
    }
  }
  return out;
}

json standard_codomain() {
  return {{"phi", {{"kind", "clamp"}, {"scale", 2}, {"cap", 1}}},
          {"g", {{"kind", "constant"}, {"value", 1}}},
          {"tnorm", "luk"}};
}

json line_space() {
  return {{"preset", "mk"},
          {"k", 1.0},
          {"h", {{"kind", "affine"}, {"offset", 1.0}, {"slope", 1.0}}},
          {"metric", {{"points", {{0.0}, {0.4}, {1.1}}}}}};
}

json table_space(const std::vector<json>& tables) {
  return {{"preset", "table"}, {"tnorm", "luk"}, {"tables", tables}};
}

json table(double start, std::vector<std::vector<double>> m) { return {{"t", start}, {"membership", m}}; }

json config_with(json space, json codomain) {
  return {{"space", std::move(space)},
          {"codomain", std::move(codomain)},
          {"samples", {{"subset", {0, 1}}, {"t_grid", {1.0}}, {"stationary", true}, {"values", {0.0, 0.1}}}}};
}

Outcome validator_sensitivity() {
  Outcome out;
  const std::vector<std::vector<double>> good{{1.0, 0.8, 0.7}, {0.8, 1.0, 0.9}, {0.7, 0.9, 1.0}};
  struct Case {
    const char* name;
    json config;
    const char* section;
    const char* item;
  };
  auto codomain = [](json phi, json g) { return json{{"phi", phi}, {"g", g}, {"tnorm", "luk"}}; };
  std::vector<Case> cases{
      {"phi(0) > 0",
       config_with(line_space(), codomain({{"kind", "piecewise_linear"}, {"breakpoints", {{0.0, 0.1}, {1.0, 0.5}}}},
                                          {{"kind", "constant"}, {"value", 1}})),
       "codomain_conditions", "item1_zero_only_at_origin"},
      {"unbounded phi",
       config_with(line_space(), codomain({{"kind", "linear"}, {"slope", 1}}, {{"kind", "constant"}, {"value", 1}})),
       "codomain_conditions", "item2_phi_bounded"},
      {"g above 1/sup phi",
       config_with(line_space(), codomain({{"kind", "clamp"}, {"scale", 1}, {"cap", 1}}, {{"kind", "constant"}, {"value", 2}})),
       "codomain_conditions", "item3_g_bounded"},
      {"zero membership",
       config_with(table_space({table(0.0, {{1.0, 0.0, 0.7}, {0.0, 1.0, 0.9}, {0.7, 0.9, 1.0}})}), standard_codomain()),
       "fuzzy_metric", "positivity"},
      {"membership 1 off the diagonal",
       config_with(table_space({table(0.0, {{1.0, 1.0, 0.7}, {1.0, 1.0, 0.7}, {0.7, 0.7, 1.0}})}), standard_codomain()),
       "fuzzy_metric", "identity"},
      {"asymmetric membership",
       config_with(table_space({table(0.0, {{1.0, 0.8, 0.7}, {0.6, 1.0, 0.9}, {0.7, 0.9, 1.0}})}), standard_codomain()),
       "fuzzy_metric", "symmetry"},
      {"triangle axiom",
       config_with(table_space({table(0.0, {{1.0, 0.9, 0.1}, {0.9, 1.0, 0.9}, {0.1, 0.9, 1.0}})}), standard_codomain()),
       "fuzzy_metric", "triangle"},
      {"membership decreasing in t",
       config_with(table_space({table(0.0, good),
                                table(2.0, {{1.0, 0.5, 0.7}, {0.5, 1.0, 0.9}, {0.7, 0.9, 1.0}})}),
                   standard_codomain()),
       "fuzzy_metric", "monotone_in_t"},
  };
  for (const Case& c : cases) {
    const auto config = cli::parse_config(c.config);
    const auto result = cli::cmd_validate(config);
    if (result.exit_code != cli::kExitValidationFailure) {
      out.fail(std::string(c.name) + ": exit code " + std::to_string(result.exit_code));
      continue;
    }
    const json& verdict = result.report.at("validation").at(c.section).at(c.item);
    if (verdict.at("passed").get<bool>() || !verdict.contains("witness")) {
      out.fail(std::string(c.name) + ": " + c.item + " not refuted with a witness");
    }
  }
  // The unmodified instances pass, so the failures above come from the defects.
  for (const json& config : {config_with(line_space(), standard_codomain()),
                             config_with(table_space({table(0.0, good)}), standard_codomain())}) {
    if (cli::cmd_validate(cli::parse_config(config)).exit_code != cli::kExitSuccess) {
      out.fail("a valid baseline configuration was rejected");
    }
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  json config = {{"space",
                  {{"preset", "mk"},
                   {"k", 1.0},
                   {"h", {{"kind", "affine"}, {"offset", 1.0}, {"slope", 1.0}}},
                   {"metric", {{"points", {{0.0}, {0.3}, {0.7}, {1.2}, {2.0}, {2.6}}}}}}},
                 {"codomain", standard_codomain()},
                 {"samples",
                  {{"subset", {0, 2, 4}},
                   {"t_grid", {0.5, 1.0, 2.0}},
                   {"values", {{0.0, 0.0, 0.0}, {0.1, 0.12, 0.15}, {0.05, 0.02, 0.0}}}}},
                 {"dilation", "estimate"},
                 {"alpha", 0.3},
                 {"queries", "all"}};
  const auto parsed = cli::parse_config(config);
  const auto dir = std::filesystem::temp_directory_path() / "fuzzylip_acceptance_determinism";
  std::vector<std::string> files;
  std::vector<nlohmann::json> reports;
  for (int run = 0; run < 2; ++run) {
    const auto outcome = cli::cmd_extend(parsed);
    const std::string sub = (dir / std::to_string(run)).string();
    cli::write_outcome(outcome, sub);
    files.push_back(cli::read_text_file(sub + "/extension.csv"));
    auto report = nlohmann::json::parse(cli::read_text_file(sub + "/report.json"));
    report.erase("timing_ms");
    reports.push_back(std::move(report));
  }
  std::filesystem::remove_all(dir);
  if (files[0].empty() || files[0].find("point,t,f_M,f_W,f_alpha") != 0) out.fail("missing CSV output");
  if (files[0] != files[1]) out.fail("CSV outputs differ between runs");
  if (reports[0].dump() != reports[1].dump()) out.fail("reports differ between runs");
  return out;
}

}  // namespace

int main() {
  std::cout << "fuzzylip acceptance suite\n";
  bool ok = true;
  ok &= run(1, "Galois laws on four presets, 1000 log-spaced points", 1.0, galois_suite);
  ok &= run(2, "piecewise adjoint of min(x,1)/2: 2y below 1/2, +inf from 1/2", 0.0, clamp_adjoint);
  ok &= run(3, "chain pseudometric equals simple-chain enumeration (50 graphs)", 10.0, chain_oracle);
  std::vector<Pipeline> runs;
  ok &= run(4, "extensions are fuzzy Lipschitz on 100 random instances", 30.0, [&] {
    runs = build_pipelines();
    return lipschitz_end_to_end(runs);
  });
  ok &= run(5, "agreement on S and f^M <= f^W on the same instances", 0.0,
            [&] { return agreement_and_sandwich(runs); });
  ok &= run(6, "closed forms match the generic pipeline (100 + 100 instances)", 10.0, closed_forms);
  ok &= run(7, "validators refute each condition and axiom with a witness, exit code 2", 0.0,
            validator_sensitivity);
  ok &= run(8, "two extend runs produce byte-identical CSV and matching reports", 0.0, determinism);
  std::cout << (ok ? "all criteria passed\n" : "some criteria FAILED\n");
  return ok ? 0 : 1;
}
