#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fuzzylip/cli/config.hpp"

namespace fuzzylip::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidationFailure = 2;
inline constexpr int kExitHypothesisFailure = 3;
inline constexpr int kExitInputError = 4;

/// Environment variable that overrides the default tolerance.
inline constexpr const char* kToleranceEnv = "FUZZYLIP_TOLERANCE";
inline constexpr double kDefaultTolerance = 1e-9;

struct CommandOptions {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
};

/// Tolerance from the environment, or the default when unset. A malformed
/// value is a ConfigError.
double default_tolerance_from_env();

struct CommandOutcome {
  int exit_code = kExitSuccess;
  /// The RunReport document.
  json report;
  /// Extension table (extend only): header "point,t,f_M,f_W,f_alpha".
  std::optional<std::string> csv;
  /// One line per failure, for the console.
  std::vector<std::string> messages;
};

/// Codomain conditions, fuzzy-metric axioms and Galois laws.
CommandOutcome cmd_validate(const RunConfig& config, const CommandOptions& options = {});

/// Dilation, hypothesis check, McShane/Whitney/blend over the query points and
/// the fuzzy-Lipschitz verification of the extension over the whole space.
CommandOutcome cmd_extend(const RunConfig& config, const CommandOptions& options = {});

/// Human-readable summary of a report file. IoError for missing or corrupt files.
std::string cmd_report(const std::string& report_path);
std::string summarize_report(const json& report);

/// Writes report.json (and extension.csv when present) into `out_dir`.
void write_outcome(const CommandOutcome& outcome, const std::string& out_dir);

}  // namespace fuzzylip::cli
