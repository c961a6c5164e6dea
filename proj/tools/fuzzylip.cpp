// Command-line front end: validate | extend | report.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fuzzylip/cli/commands.hpp"

namespace {

using namespace fuzzylip;
using namespace fuzzylip::cli;

void print_messages(const CommandOutcome& outcome) {
  for (const std::string& line : outcome.messages) std::cerr << line << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"McShane-Whitney extension of fuzzy Lipschitz maps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  std::string report_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--tolerance", tolerance, "verification tolerance (default 1e-9)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", seed, "seed for randomized validator grids")->capture_default_str();
  };
  CLI::App* validate = app.add_subcommand("validate", "check codomain conditions, axioms and Galois laws");
  add_common(validate);
  CLI::App* extend = app.add_subcommand("extend", "extend the sampled map and verify the result");
  add_common(extend);
  CLI::App* report = app.add_subcommand("report", "summarize a report.json");
  report->add_option("--config", config_path, "accepted for symmetry; unused");
  report->add_option("--out", out_dir, "directory holding report.json")->capture_default_str();
  report->add_option("--report", report_path, "report file (overrides --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitInputError;
  }

  try {
    if (report->parsed()) {
      const std::string path = report_path.empty() ? out_dir + "/report.json" : report_path;
      std::cout << cmd_report(path);
      return kExitSuccess;
    }
    CommandOptions options;
    options.tolerance = tolerance ? *tolerance : default_tolerance_from_env();
    options.seed = seed;
    const RunConfig config = load_config(config_path);
    const CommandOutcome outcome =
        validate->parsed() ? cmd_validate(config, options) : cmd_extend(config, options);
    write_outcome(outcome, out_dir);
    print_messages(outcome);
    std::cout << summarize_report(outcome.report);
    return outcome.exit_code;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitHypothesisFailure;
  } catch (const InvalidMetricError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidationFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
