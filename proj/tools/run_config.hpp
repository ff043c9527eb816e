#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace zorich::cli {

/// Malformed command line or config file (exit code 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<double> lambda;          ///< explicit parameter; wins over lambda_fraction
  std::optional<double> lambda_fraction; ///< lambda = fraction * lambda_max(L_hat)
  std::uint64_t L_samples = 100000;
  std::uint64_t seed = 7;
  int depth = 20;
  std::map<std::string, double> tolerances{{"tmin", 1e-9}, {"forward_slack", 1e-6}};
  std::string output_dir = "zorich-out";
  int floor_budget = 0;                  ///< probe budget for the brush floor; 0 keeps p_lambda = M

  double tolerance(const std::string& name) const;
};

inline constexpr double kDefaultLambda = 0.01;
inline constexpr const char* kOutputDirEnv = "ZORICH_OUTPUT_DIR";

/// Applies one key=value setting. Keys: lambda, lambda_fraction, L_samples,
/// seed, depth, output_dir, floor_budget and tol.<name>.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key=value file; blank lines and lines starting with # are
/// ignored. Throws IoError when unreadable and UsageError on bad lines.
void load_config_file(RunConfig& config, const std::string& path);

/// ZORICH_OUTPUT_DIR, when set and non-empty, replaces output_dir.
void apply_environment(RunConfig& config);

}  // namespace zorich::cli
