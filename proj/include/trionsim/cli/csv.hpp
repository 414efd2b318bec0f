#pragma once

// CSV files written by the tool: '#' header lines, one column-name line,
// then rows. ',' separator, '.' decimal, LF endings, reals at 17
// significant digits.
//
// Header layout:
//   # trionsim <version>
//   # command: <command>
//   # units: ...
//   # model: ... (human-readable parameter list)
//   # <any extra lines>
//   # config: <flow YAML, see emit_config>

#include <string>
#include <string_view>
#include <vector>

#include "trionsim/cli/config.hpp"

namespace trionsim::cli {

/// 17 significant digits, shortest exponent form of printf("%.17g"); -0 is
/// written as 0.
std::string format_real(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string write_csv(const RunConfig& config, std::string_view command, const Table& table,
                      const std::vector<std::string>& notes = {});

struct CsvFile {
  std::string version;
  std::string command;
  RunConfig config;
  std::vector<std::string> notes;  // header lines other than the fixed ones
  Table table;
};

/// Inverse of write_csv. Throws ArgumentError on malformed input.
CsvFile parse_csv(std::string_view text);
CsvFile read_csv(const std::string& path);

}  // namespace trionsim::cli
