#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "betaflow/initial_measure.hpp"
#include "betaflow/report_io.hpp"
#include "betaflow/rng.hpp"

namespace betaflow::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitThresholdFailure = 1,
  kExitInvalidParameter = 2,
  kExitIo = 3,
  kExitUnknownExperiment = 4,
  kExitEvalPoint = 5,
  kExitNumeric = 6,
};

inline const std::vector<std::string> kExperiments{"simulate", "beta-independence", "triangular",
                                                   "corollary", "minors", "all"};

/// Fully resolved run configuration. Experiment-specific defaults are filled
/// in by parse_config, so every field is meaningful after parsing.
struct RunConfig {
  std::string experiment;
  std::vector<std::size_t> n_grid;
  std::vector<double> taus;
  std::vector<InverseTemperature> betas;
  std::size_t trials = 0;
  std::uint64_t seed = 42;
  InitialMeasureSpec initial;
  double z = 0.0;
  double delta = 0.1;
  double threshold = 0.01;
  std::filesystem::path out_dir = "betaflow-out";
  OutputFormats formats;

  /// Echo as a JSON object using the config-file keys.
  std::string to_json() const;
};

/// Thrown by parse_config; carries the exit code for the failure class.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

/// Parses flags and an optional JSON config file (--config). Flags override
/// file values; unknown file keys are rejected. Throws ConfigError.
/// Returns nullopt when only help or version output was requested.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

/// Executes the configured experiment, writes report files and returns the
/// process exit code.
int run(const RunConfig& config);

/// parse_config + run with every failure mapped to its exit code and a
/// message on stderr.
int main_entry(int argc, const char* const* argv);

}  // namespace betaflow::cli
