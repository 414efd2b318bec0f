#pragma once

// Run configuration for the command-line tool.
//
// Config files are YAML. Every frequency and rate is linear GHz and becomes
// rad/ns by an exact factor 2*pi when the model is built; branching_b is
// dimensionless, delays are ns. schema/run_config.schema.json documents the
// layout.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trionsim/correlations.hpp"
#include "trionsim/errors.hpp"
#include "trionsim/sweeps.hpp"
#include "trionsim/trion_model.hpp"

namespace trionsim::cli {

/// Schema or physics violations, one message per entry, each prefixed with
/// "<source>:<line>:" when the offending node is known.
class ConfigError : public ArgumentError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either an inclusive linear range or an explicit list of values.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 0;
  std::vector<double> explicit_values;  // used when non-empty

  std::vector<double> values() const;
  bool operator==(const Grid&) const = default;
};

struct AxisConfig {
  std::string name;  // TrionParams field
  Grid grid;         // GHz, or dimensionless for branching_b
  bool operator==(const AxisConfig&) const = default;
};

struct SweepConfig {
  Observable observable = Observable::fluorescence;
  std::vector<AxisConfig> axes;
  bool operator==(const SweepConfig&) const = default;
};

struct SpectrumConfig {
  EmissionChannel channel = EmissionChannel::fundamental;
  Grid frequencies;  // GHz
  bool operator==(const SpectrumConfig&) const = default;
};

struct G2Config {
  EmissionChannel channel_a = EmissionChannel::fundamental;
  EmissionChannel channel_b = EmissionChannel::fundamental;
  Grid delays;                // ns
  double jitter_sigma = 0.0;  // ns, 0 = ideal detectors
  bool operator==(const G2Config&) const = default;
};

struct FitRabiConfig {
  std::vector<double> powers;
  std::vector<double> intensities;
  std::optional<double> gamma_r;  // GHz; defaults to model.gamma_r
  bool operator==(const FitRabiConfig&) const = default;
};

struct RateCompareConfig {
  AxisConfig axis{"delta2", {}};
  bool operator==(const RateCompareConfig&) const = default;
};

struct RunConfig {
  std::string preset;  // empty, "qd1" or "qd2"
  TrionParams model;   // linear GHz for frequency fields
  std::optional<SweepConfig> sweep;
  std::optional<SpectrumConfig> spectrum;
  std::optional<G2Config> g2;
  std::optional<FitRabiConfig> fit_rabi;
  std::optional<RateCompareConfig> rate_compare;
  std::string output;  // optional default output path

  bool operator==(const RunConfig&) const = default;
};

struct Preset {
  std::string_view name;
  TrionParams model;  // GHz
  std::string_view note;
};

/// Known presets; rates in linear GHz.
const std::vector<Preset>& presets();

/// Commands that need a block name that block; `validate` and `steady` need none.
std::string_view required_block(std::string_view command);

/// Parses and validates a YAML document. `preset_override`, when non-empty,
/// replaces the document's preset before model keys are applied.
/// `command`, when non-empty, also requires the block that command reads.
/// Throws ConfigError listing every violation.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>",
                       std::string_view command = {}, std::string_view preset_override = {});

/// Reads a file and calls parse_config. Throws IoError if unreadable.
RunConfig load_config(const std::string& path, std::string_view command = {},
                      std::string_view preset_override = {});

/// Single-line flow YAML holding the complete configuration, reals at 17
/// significant digits, so that parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& c);

/// Model in internal units (rad/ns).
TrionParams internal_params(const RunConfig& c);

/// GHz -> rad/ns for frequency fields, identity for branching_b.
double to_internal(std::string_view field, double value);

}  // namespace trionsim::cli
