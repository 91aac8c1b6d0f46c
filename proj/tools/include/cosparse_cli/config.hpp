#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <cosparse/types.hpp>

namespace cosparse::cli {

inline constexpr std::string_view kExperimentNames[] = {
    "radar", "dirac-comb", "noise-curve", "constants", "coefficient-decay", "method-comparison"};

bool is_experiment(std::string_view name);

/// Settings of one experiment run. Every field is always populated; the
/// per-experiment defaults come from default_config().
struct ExperimentConfig {
  std::string experiment = "noise-curve";
  Index n = 256;
  Index m = 100;
  /// Gabor redundancy d / n.
  Index oversampling = 4;
  /// Sparsity level for the reweighting stabilizer and the lemma audit.
  Index s = 25;
  /// Relative noise levels sqrt(m) sigma / ||A f||.
  std::vector<double> sigmas{0.0};
  int trials = 5;
  /// Total weighted solves of the reweighted method (1 = plain).
  int rw_iters = 4;
  std::uint64_t seed = 1;
  /// Gabor time step; the channel count is oversampling * gabor_a.
  Index gabor_a = 8;
  double window_sigma = 6.0;
  Index pulses = 1;
  Index pulse_duration = 64;
  Index rise_fall = 6;
  /// Power-law exponent of compressible coefficients.
  double decay = 1.5;
  /// D-RIP levels of the constants sweep.
  std::vector<double> deltas;
  int max_iter = 20000;
  double tol_rel = 1e-6;
  std::string output_dir = ".";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults for `experiment`; throws InvalidArgument for an unknown name.
ExperimentConfig default_config(std::string_view experiment);

/// Apply "key = value" lines to `config`. Blank lines and lines starting
/// with '#' are ignored. Throws io::ParseError on unknown keys or bad values.
void apply_config_text(ExperimentConfig& config, std::string_view text);

/// Parse a config file: defaults of its `experiment` key (noise-curve when
/// absent), then every key in the file.
ExperimentConfig parse_config(std::string_view text);

/// Every field as "key = value", one per line, in a fixed order.
std::string serialize_config(const ExperimentConfig& config);

/// Set one field from its text form.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Throws InvalidArgument when fields are inconsistent.
void validate(const ExperimentConfig& config);

}  // namespace cosparse::cli
