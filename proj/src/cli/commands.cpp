#include "trionsim/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "trionsim/cli/csv.hpp"
#include "trionsim/correlations.hpp"
#include "trionsim/rate_baseline.hpp"
#include "trionsim/sweeps.hpp"

namespace trionsim::cli {

namespace {

std::string column(std::string_view field_name) {
  return std::string(field_name) + (is_frequency_field(field_name) ? "_ghz" : "");
}

SweepAxis internal_axis(const AxisConfig& a) {
  SweepAxis axis{a.name, a.grid.values()};
  for (double& v : axis.values) v = to_internal(a.name, v);
  return axis;
}

std::vector<double> scaled(std::vector<double> v, double factor) {
  for (double& x : v) x *= factor;
  return v;
}

std::string dip_note(const DipMetrics& m, const std::string& axis) {
  return "dip: depth=" + format_real(m.depth) + " center_" + column(axis) + "=" +
         format_real(is_frequency_field(axis) ? m.center / kTwoPi : m.center) + " asymmetry=" + format_real(m.asymmetry);
}

void warn_window(const SweepResult& r, const TrionParams& p, const DipMetrics& m, std::ostream& log) {
  if (r.axis1.name == "delta2" && !dip_window_sufficient(r, p, m.center)) {
    log << "warning: delta2 window is narrower than 10 p-t half-widths around the dip; the edge baseline "
           "underestimates the depth\n";
  }
}

std::string run_steady(const RunConfig& c) {
  const auto p = internal_params(c);
  const auto rho = trion_steady_state(p);
  const double fund = channel_rate(p, EmissionChannel::fundamental) * rho.population(trion_basis::t);
  const double auger = channel_rate(p, EmissionChannel::auger) * rho.population(trion_basis::t);
  Table t{{"fluorescence", "auger", "rate_fluorescence", "rho_ss", "rho_pp", "rho_tt"},
          {{fund, auger, rate_fluorescence_intensity(p), rho.population(trion_basis::s), rho.population(trion_basis::p),
            rho.population(trion_basis::t)}}};
  return write_csv(c, "steady", t);
}

std::string run_sweep(const RunConfig& c, unsigned threads, std::ostream& log) {
  const auto p = internal_params(c);
  std::vector<SweepAxis> axes;
  for (const auto& a : c.sweep->axes) axes.push_back(internal_axis(a));
  const auto r = sweep(p, axes, c.sweep->observable, threads);

  Table t;
  std::vector<std::string> notes;
  const auto v1 = c.sweep->axes[0].grid.values();
  t.columns.push_back(column(c.sweep->axes[0].name));
  if (r.axis2) {
    const auto v2 = c.sweep->axes[1].grid.values();
    t.columns.push_back(column(c.sweep->axes[1].name));
    t.columns.emplace_back(to_string(c.sweep->observable));
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) t.rows.push_back({v1[i], v2[j], r.at(i, j)});
  } else {
    t.columns.emplace_back(to_string(c.sweep->observable));
    for (std::size_t i = 0; i < r.rows(); ++i) t.rows.push_back({v1[i], r.at(i)});
    if (r.rows() >= 3) {
      const auto m = dip_metrics(r);
      notes.push_back(dip_note(m, r.axis1.name));
      warn_window(r, p, m, log);
    }
  }
  return write_csv(c, "sweep", t, notes);
}

std::string run_spectrum(const RunConfig& c) {
  const auto p = internal_params(c);
  const auto freqs = c.spectrum->frequencies.values();
  const auto s = emission_spectrum(p, c.spectrum->channel, scaled(freqs, kTwoPi));
  Table t{{"frequency_ghz", "spectral_density"}, {}};
  for (std::size_t i = 0; i < freqs.size(); ++i) t.rows.push_back({freqs[i], s.values[i]});
  std::vector<std::string> notes;
  try {
    notes.push_back("splitting_ghz=" + format_real(extract_splitting(s) / kTwoPi));
  } catch (const NoSplittingError&) {
    notes.push_back("splitting_ghz=none");
  }
  return write_csv(c, "spectrum", t, notes);
}

std::string run_g2(const RunConfig& c) {
  const auto p = internal_params(c);
  const auto delays = c.g2->delays.values();
  auto g = g2(p, c.g2->channel_a, c.g2->channel_b, delays);
  if (c.g2->jitter_sigma > 0.0) g = apply_detector_jitter(g, c.g2->jitter_sigma);
  Table t{{"delay_ns", "g2"}, {}};
  for (std::size_t i = 0; i < delays.size(); ++i) t.rows.push_back({delays[i], g.values[i]});
  std::vector<std::string> notes{"rate_a_per_ns=" + format_real(g.rate_a) + " rate_b_per_ns=" + format_real(g.rate_b)};
  return write_csv(c, "g2", t, notes);
}

std::string run_fit(const RunConfig& c) {
  const double gamma_r_ghz = c.fit_rabi->gamma_r.value_or(c.model.gamma_r);
  const auto fit = fit_rabi_from_power(c.fit_rabi->powers, c.fit_rabi->intensities, kTwoPi * gamma_r_ghz);
  Table t{{"omega_at_unit_power_ghz", "scale", "residual_norm", "gamma_r_ghz"},
          {{fit.omega_at_unit_power / kTwoPi, fit.scale, fit.residual_norm, gamma_r_ghz}}};
  return write_csv(c, "fit-rabi", t, {"model: intensity = scale * rho_ee(2*pi*omega_at_unit_power_ghz*sqrt(power))"});
}

std::string run_rate_compare(const RunConfig& c, unsigned threads, std::ostream& log) {
  const auto p = internal_params(c);
  const std::vector<SweepAxis> axes{internal_axis(c.rate_compare->axis)};
  const auto master = sweep(p, axes, Observable::fluorescence, threads);
  const auto rate = sweep(p, axes, Observable::rate_fluorescence, threads);
  const auto v = c.rate_compare->axis.grid.values();
  Table t{{column(c.rate_compare->axis.name), "master_fluorescence", "rate_fluorescence"}, {}};
  for (std::size_t i = 0; i < v.size(); ++i) t.rows.push_back({v[i], master.at(i), rate.at(i)});
  std::vector<std::string> notes;
  if (v.size() >= 3) {
    const auto mm = dip_metrics(master);
    notes.push_back("master " + dip_note(mm, axes[0].name));
    notes.push_back("rate " + dip_note(dip_metrics(rate), axes[0].name));
    warn_window(master, p, mm, log);
  }
  return write_csv(c, "rate-compare", t, notes);
}

void write_file(const std::string& path, const std::string& text) {
  const auto tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) throw IoError("error writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write '" + path + "'");
  }
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{"steady", "sweep", "spectrum", "g2", "fit-rabi", "rate-compare",
                                                   "validate"};
  return names;
}

std::string execute(std::string_view command, const RunConfig& config, unsigned threads, std::ostream& log) {
  const auto block = required_block(command);
  const bool present = block.empty() || (block == "sweep" && config.sweep) || (block == "spectrum" && config.spectrum) ||
                       (block == "g2" && config.g2) || (block == "fit_rabi" && config.fit_rabi) ||
                       (block == "rate_compare" && config.rate_compare);
  if (!present) throw ConfigError({"command '" + std::string(command) + "' needs a '" + std::string(block) + "' block"});

  if (command == "steady") return run_steady(config);
  if (command == "sweep") return run_sweep(config, threads, log);
  if (command == "spectrum") return run_spectrum(config);
  if (command == "g2") return run_g2(config);
  if (command == "fit-rabi") return run_fit(config);
  if (command == "rate-compare") return run_rate_compare(config, threads, log);
  throw ArgumentError("unknown command '" + std::string(command) + "'");
}

int run(std::string_view command, const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end()) {
      err << "error: unknown command '" << command << "'\n";
      return kConfigInvalid;
    }
    const auto config = load_config(options.config_path, command == "validate" ? "" : command, options.preset);
    if (command == "validate") {
      out << options.config_path << ": valid\n";
      return kOk;
    }
    const auto text = execute(command, config, std::max(1u, options.threads), err);
    const auto& path = options.out_path.empty() ? config.output : options.out_path;
    if (path.empty()) {
      out << text;
    } else {
      write_file(path, text);
    }
    return kOk;
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) err << "error: " << v << "\n";
    return kConfigInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const NumericalError& e) {
    err << "error: numerical failure in '" << command << "': " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigInvalid;
  }
}

}  // namespace trionsim::cli
