#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "trionsim/cli/config.hpp"

namespace trionsim::cli {

enum ExitCode : int { kOk = 0, kConfigInvalid = 2, kNumericalFailure = 3, kIoFailure = 4 };

/// steady, sweep, spectrum, g2, fit-rabi, rate-compare, validate
const std::vector<std::string_view>& command_names();

/// Computes a command and returns the CSV text. Warnings go to `log`.
/// Throws ConfigError, ArgumentError or NumericalError.
std::string execute(std::string_view command, const RunConfig& config, unsigned threads, std::ostream& log);

struct RunOptions {
  std::string config_path;
  std::string out_path;  // overrides config.output; empty with no config.output means `out`
  std::string preset;    // overrides the config's preset
  unsigned threads = 1;
};

/// Loads, validates, computes and writes. The output file is written only
/// after the computation succeeded. Returns an ExitCode.
int run(std::string_view command, const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace trionsim::cli
