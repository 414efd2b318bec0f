#include "trionsim/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace trionsim::cli {

namespace {

constexpr std::string_view kConfigPrefix = "# config: ";
constexpr std::string_view kCommandPrefix = "# command: ";
constexpr std::string_view kVersionPrefix = "# trionsim ";
constexpr std::string_view kUnits =
    "# units: frequencies, detunings and rates in GHz (linear); internal angular units rad/ns = 2*pi*GHz "
    "exactly; intensities in photons/ns; delays in ns";

std::string model_line(const RunConfig& c) {
  std::string line = "# model:";
  for (const auto name : trion_field_names()) {
    line += " " + std::string(name) + "=" + format_real(field(c.model, name));
    if (is_frequency_field(name)) line += "GHz";
  }
  return line;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    out.push_back(s.substr(from, at == std::string_view::npos ? std::string_view::npos : at - from));
    if (at == std::string_view::npos) return out;
    from = at + 1;
  }
}

double parse_real(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ArgumentError("csv line " + std::to_string(line) + ": not a number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

std::string write_csv(const RunConfig& config, std::string_view command, const Table& table,
                      const std::vector<std::string>& notes) {
  std::string out;
  out += std::string(kVersionPrefix) + TRIONSIM_VERSION + "\n";
  out += std::string(kCommandPrefix) + std::string(command) + "\n";
  out += std::string(kUnits) + "\n";
  if (!config.preset.empty()) {
    for (const auto& p : presets()) {
      if (p.name == config.preset) out += "# preset " + config.preset + ": " + std::string(p.note) + "\n";
    }
  }
  out += model_line(config) + "\n";
  for (const auto& n : notes) out += "# " + n + "\n";
  out += std::string(kConfigPrefix) + emit_config(config) + "\n";

  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += "\n";
  }
  return out;
}

CsvFile parse_csv(std::string_view text) {
  CsvFile f;
  bool have_config = false, have_columns = false;
  std::size_t line_no = 0;
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (const auto line : lines) {
    ++line_no;
    if (line.starts_with('#')) {
      if (have_columns) throw ArgumentError("csv line " + std::to_string(line_no) + ": header after data");
      if (line.starts_with(kVersionPrefix)) {
        f.version = std::string(line.substr(kVersionPrefix.size()));
      } else if (line.starts_with(kCommandPrefix)) {
        f.command = std::string(line.substr(kCommandPrefix.size()));
      } else if (line.starts_with(kConfigPrefix)) {
        f.config = parse_config(line.substr(kConfigPrefix.size()), "csv header");
        have_config = true;
      } else if (line != kUnits && !line.starts_with("# model:") && !line.starts_with("# preset ")) {
        f.notes.emplace_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      }
      continue;
    }
    if (!have_columns) {
      for (const auto c : split(line, ',')) f.table.columns.emplace_back(c);
      have_columns = true;
      continue;
    }
    std::vector<double> row;
    for (const auto cell : split(line, ',')) row.push_back(parse_real(cell, line_no));
    if (row.size() != f.table.columns.size()) {
      throw ArgumentError("csv line " + std::to_string(line_no) + ": expected " +
                          std::to_string(f.table.columns.size()) + " fields");
    }
    f.table.rows.push_back(std::move(row));
  }
  if (f.version.empty() || f.command.empty() || !have_config || !have_columns) {
    throw ArgumentError("csv: missing trionsim header lines");
  }
  return f;
}

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace trionsim::cli
