#include "trionsim/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trionsim/cli/csv.hpp"

namespace trionsim::cli {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "\n") + l;
  return out;
}

TrionParams qd_rates() {
  TrionParams p;
  p.gamma_r = 0.50;
  p.branching_b = 0.01;
  p.gamma_p_relax = 9.3;
  p.gamma_p_deph = 8.8;
  return p;
}

// Collects violations while walking the document.
class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  void fail(const YAML::Node& at, const std::string& message) {
    if (at.IsDefined() && at.Mark().line >= 0) {
      errors_.push_back(source_ + ":" + std::to_string(at.Mark().line + 1) + ": " + message);
    } else {
      errors_.push_back(source_ + ": " + message);
    }
  }

  const std::vector<std::string>& errors() const { return errors_; }

  bool expect_map(const YAML::Node& n, const std::string& what) {
    if (n.IsMap()) return true;
    fail(n, "'" + what + "' must be a mapping");
    return false;
  }

  // Reports keys of `n` that are not in `allowed`.
  void check_keys(const YAML::Node& n, const std::string& what, std::initializer_list<std::string_view> allowed) {
    for (auto it = n.begin(); it != n.end(); ++it) {
      const auto key = it->first.as<std::string>("");
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(it->first, "unknown key '" + key + "' in " + what);
      }
    }
  }

  std::optional<double> real(const YAML::Node& n, const std::string& what) {
    double v = 0.0;
    if (!n.IsScalar() || !YAML::convert<double>::decode(n, v)) {
      fail(n, "'" + what + "' must be a number");
      return std::nullopt;
    }
    if (!std::isfinite(v)) {
      fail(n, "'" + what + "' must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> text(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) {
      fail(n, "'" + what + "' must be a string");
      return std::nullopt;
    }
    return n.Scalar();
  }

  std::vector<double> reals(const YAML::Node& n, const std::string& what) {
    std::vector<double> out;
    if (!n.IsSequence()) {
      fail(n, "'" + what + "' must be a list of numbers");
      return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (const auto v = real(n[i], what + "[" + std::to_string(i) + "]")) out.push_back(*v);
    }
    return out;
  }

  // `named` admits the extra 'name' key of an axis.
  Grid grid(const YAML::Node& n, const std::string& what, bool named = false) {
    Grid g;
    if (!expect_map(n, what)) return g;
    if (named) {
      check_keys(n, what, {"name", "start", "stop", "points", "values"});
    } else {
      check_keys(n, what, {"start", "stop", "points", "values"});
    }
    if (n["values"]) {
      if (n["start"] || n["stop"] || n["points"]) fail(n, "'" + what + "' takes either 'values' or 'start/stop/points'");
      g.explicit_values = reals(n["values"], what + ".values");
      if (n["values"].IsSequence() && n["values"].size() == 0) fail(n["values"], "'" + what + ".values' is empty");
      for (std::size_t i = 1; i < g.explicit_values.size(); ++i) {
        if (!(g.explicit_values[i] > g.explicit_values[i - 1])) {
          fail(n["values"], "grid '" + what + "' is not strictly ascending");
          break;
        }
      }
      return g;
    }
    for (const char* key : {"start", "stop", "points"}) {
      if (!n[key]) fail(n, "'" + what + "' is missing '" + key + "'");
    }
    if (n["start"]) g.start = real(n["start"], what + ".start").value_or(0.0);
    if (n["stop"]) g.stop = real(n["stop"], what + ".stop").value_or(0.0);
    if (n["points"]) {
      long long points = 0;
      if (!n["points"].IsScalar() || !YAML::convert<long long>::decode(n["points"], points) || points < 1) {
        fail(n["points"], "'" + what + ".points' must be a positive integer");
      } else {
        g.points = static_cast<std::size_t>(points);
      }
    }
    if (g.points > 1 && !(g.stop > g.start)) fail(n, "grid '" + what + "' is not ascending (start >= stop)");
    if (g.points == 1 && g.stop != g.start) fail(n, "grid '" + what + "' with one point needs start == stop");
    return g;
  }

  std::optional<EmissionChannel> channel(const YAML::Node& n, const std::string& what) {
    const auto t = text(n, what);
    if (!t) return std::nullopt;
    try {
      return parse_channel(*t);
    } catch (const ArgumentError&) {
      fail(n, "'" + what + "' must be 'fundamental' or 'auger'");
      return std::nullopt;
    }
  }

  AxisConfig axis(const YAML::Node& n, const std::string& what) {
    AxisConfig a;
    if (!expect_map(n, what)) return a;
    if (!n["name"]) {
      fail(n, "'" + what + "' is missing 'name'");
    } else if (const auto name = text(n["name"], what + ".name")) {
      a.name = *name;
      const auto& names = trion_field_names();
      if (std::find(names.begin(), names.end(), a.name) == names.end()) {
        fail(n["name"], "unknown model field '" + a.name + "' in " + what);
        a.name.clear();
      }
    }
    a.grid = grid(n, what, true);
    return a;
  }

 private:
  std::string source_;
  std::vector<std::string> errors_;
};

void check_model(Reader& r, const TrionParams& ghz, const YAML::Node& at) {
  for (const auto name : trion_field_names()) {
    const double v = field(ghz, name);
    const bool rate = name != "delta1" && name != "delta2";
    if (name == "branching_b") {
      if (!(v >= 0.0 && v < 1.0)) r.fail(at[std::string(name)] ? at[std::string(name)] : at, "branching_b out of range [0, 1)");
    } else if (name == "gamma_r") {
      if (!(v > 0.0)) r.fail(at[std::string(name)] ? at[std::string(name)] : at, "gamma_r must be > 0");
    } else if (rate && v < 0.0) {
      r.fail(at[std::string(name)] ? at[std::string(name)] : at, std::string(name) + " must be >= 0");
    }
  }
}

// Axis values must keep the model valid at every grid point.
void check_axis_values(Reader& r, const TrionParams& ghz, const AxisConfig& a, const YAML::Node& at) {
  if (a.name.empty()) return;
  for (const double v : a.grid.values()) {
    TrionParams p = ghz;
    set_field(p, a.name, v);
    try {
      p.validate();
    } catch (const ArgumentError& e) {
      r.fail(at, "axis '" + a.name + "' value " + format_real(v) + " gives an invalid model: " + e.what());
      return;
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : ArgumentError(join(violations)), violations_(std::move(violations)) {}

std::vector<double> Grid::values() const {
  if (!explicit_values.empty()) return explicit_values;
  return linspace(start, stop, points);
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"qd1", qd_rates(), "QD1: fundamental transition 384.7 THz, radiative Auger line red-shifted by 3.2 THz (13.2 meV)"},
      {"qd2", qd_rates(),
       "QD2: rates not characterized separately; QD1 rates assumed. Saturation-calibrated Rabi frequency 67.7 GHz"},
  };
  return table;
}

std::string_view required_block(std::string_view command) {
  if (command == "sweep") return "sweep";
  if (command == "spectrum") return "spectrum";
  if (command == "g2") return "g2";
  if (command == "fit-rabi") return "fit_rabi";
  if (command == "rate-compare") return "rate_compare";
  return {};
}

RunConfig parse_config(std::string_view text, std::string_view source, std::string_view command,
                       std::string_view preset_override) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError({std::string(source) + ":" + std::to_string(e.mark.line + 1) + ": YAML syntax error: " + e.msg});
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError({std::string(source) + ": top level must be a mapping"});
  r.check_keys(root, "config", {"preset", "model", "sweep", "spectrum", "g2", "fit_rabi", "rate_compare", "output"});

  RunConfig c;
  if (root["preset"]) {
    if (const auto t = r.text(root["preset"], "preset")) c.preset = *t;
  }
  if (!preset_override.empty()) c.preset = std::string(preset_override);
  c.model = qd_rates();
  if (!c.preset.empty()) {
    const auto& all = presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == c.preset; });
    if (it == all.end()) {
      r.fail(root["preset"] ? root["preset"] : root, "unknown preset '" + c.preset + "' (known: qd1, qd2)");
    } else {
      c.model = it->model;
    }
  }

  const YAML::Node model = root["model"];
  if (model && r.expect_map(model, "model")) {
    for (auto it = model.begin(); it != model.end(); ++it) {
      const auto key = it->first.as<std::string>("");
      const auto& names = trion_field_names();
      if (std::find(names.begin(), names.end(), key) == names.end()) {
        r.fail(it->first, "unknown model field '" + key + "'");
        continue;
      }
      if (const auto v = r.real(it->second, "model." + key)) set_field(c.model, key, *v);
    }
  }
  check_model(r, c.model, model && model.IsMap() ? model : root);

  if (const YAML::Node n = root["sweep"]; n && r.expect_map(n, "sweep")) {
    r.check_keys(n, "sweep", {"observable", "axes"});
    SweepConfig s;
    if (n["observable"]) {
      if (const auto t = r.text(n["observable"], "sweep.observable")) {
        try {
          s.observable = parse_observable(*t);
        } catch (const ArgumentError&) {
          r.fail(n["observable"], "'sweep.observable' must be fluorescence, auger or rate_fluorescence");
        }
      }
    }
    const YAML::Node axes = n["axes"];
    if (!axes) {
      r.fail(n, "'sweep' is missing 'axes'");
    } else if (!axes.IsSequence() || axes.size() < 1 || axes.size() > 2) {
      r.fail(axes, "'sweep.axes' must list one or two axes");
    } else {
      for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string what = "sweep.axes[" + std::to_string(i) + "]";
        s.axes.push_back(r.axis(axes[i], what));
        check_axis_values(r, c.model, s.axes.back(), axes[i]);
      }
      if (s.axes.size() == 2 && !s.axes[0].name.empty() && s.axes[0].name == s.axes[1].name) {
        r.fail(axes, "'sweep.axes' repeats field '" + s.axes[0].name + "'");
      }
    }
    c.sweep = std::move(s);
  }

  if (const YAML::Node n = root["spectrum"]; n && r.expect_map(n, "spectrum")) {
    r.check_keys(n, "spectrum", {"channel", "frequencies"});
    SpectrumConfig s;
    if (n["channel"]) s.channel = r.channel(n["channel"], "spectrum.channel").value_or(s.channel);
    if (!n["frequencies"]) {
      r.fail(n, "'spectrum' is missing 'frequencies'");
    } else {
      s.frequencies = r.grid(n["frequencies"], "spectrum.frequencies");
    }
    c.spectrum = std::move(s);
  }

  if (const YAML::Node n = root["g2"]; n && r.expect_map(n, "g2")) {
    r.check_keys(n, "g2", {"channel_a", "channel_b", "delays", "jitter_sigma"});
    G2Config g;
    if (n["channel_a"]) g.channel_a = r.channel(n["channel_a"], "g2.channel_a").value_or(g.channel_a);
    if (n["channel_b"]) g.channel_b = r.channel(n["channel_b"], "g2.channel_b").value_or(g.channel_b);
    if (!n["delays"]) {
      r.fail(n, "'g2' is missing 'delays'");
    } else {
      g.delays = r.grid(n["delays"], "g2.delays");
    }
    if (n["jitter_sigma"]) {
      g.jitter_sigma = r.real(n["jitter_sigma"], "g2.jitter_sigma").value_or(0.0);
      if (g.jitter_sigma < 0.0) r.fail(n["jitter_sigma"], "'g2.jitter_sigma' must be >= 0");
    }
    if ((g.channel_a == EmissionChannel::auger || g.channel_b == EmissionChannel::auger) &&
        c.model.branching_b == 0.0) {
      r.fail(n, "g2 on the auger channel needs branching_b > 0");
    }
    c.g2 = std::move(g);
  }

  if (const YAML::Node n = root["fit_rabi"]; n && r.expect_map(n, "fit_rabi")) {
    r.check_keys(n, "fit_rabi", {"powers", "intensities", "gamma_r"});
    FitRabiConfig f;
    if (!n["powers"]) r.fail(n, "'fit_rabi' is missing 'powers'");
    if (!n["intensities"]) r.fail(n, "'fit_rabi' is missing 'intensities'");
    if (n["powers"]) f.powers = r.reals(n["powers"], "fit_rabi.powers");
    if (n["intensities"]) f.intensities = r.reals(n["intensities"], "fit_rabi.intensities");
    if (n["gamma_r"]) {
      f.gamma_r = r.real(n["gamma_r"], "fit_rabi.gamma_r");
      if (f.gamma_r && !(*f.gamma_r > 0.0)) r.fail(n["gamma_r"], "'fit_rabi.gamma_r' must be > 0");
    }
    if (n["powers"] && n["intensities"]) {
      if (f.powers.size() != f.intensities.size()) r.fail(n, "'fit_rabi' powers and intensities differ in length");
      if (f.powers.size() < 5) r.fail(n, "'fit_rabi' needs at least 5 data points");
      for (const double p : f.powers) {
        if (!(p > 0.0)) {
          r.fail(n["powers"], "'fit_rabi.powers' must all be > 0");
          break;
        }
      }
    }
    c.fit_rabi = std::move(f);
  }

  if (const YAML::Node n = root["rate_compare"]; n && r.expect_map(n, "rate_compare")) {
    r.check_keys(n, "rate_compare", {"axis"});
    RateCompareConfig rc;
    if (!n["axis"]) {
      r.fail(n, "'rate_compare' is missing 'axis'");
    } else {
      rc.axis = r.axis(n["axis"], "rate_compare.axis");
      check_axis_values(r, c.model, rc.axis, n["axis"]);
    }
    c.rate_compare = std::move(rc);
  }

  if (root["output"]) c.output = r.text(root["output"], "output").value_or("");

  if (const auto block = required_block(command); !block.empty() && !root[std::string(block)]) {
    r.fail(root, "command '" + std::string(command) + "' needs a '" + std::string(block) + "' block");
  }

  if (!r.errors().empty()) throw ConfigError(r.errors());
  return c;
}

RunConfig load_config(const std::string& path, std::string_view command, std::string_view preset_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config '" + path + "'");
  return parse_config(buf.str(), path, command, preset_override);
}

namespace {

void emit_grid(YAML::Emitter& e, const Grid& g) {
  if (!g.explicit_values.empty()) {
    e << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const double v : g.explicit_values) e << format_real(v);
    e << YAML::EndSeq;
  } else {
    e << YAML::Key << "start" << YAML::Value << format_real(g.start);
    e << YAML::Key << "stop" << YAML::Value << format_real(g.stop);
    e << YAML::Key << "points" << YAML::Value << g.points;
  }
}

void emit_axis(YAML::Emitter& e, const AxisConfig& a) {
  e << YAML::BeginMap << YAML::Key << "name" << YAML::Value << a.name;
  emit_grid(e, a.grid);
  e << YAML::EndMap;
}

void emit_reals(YAML::Emitter& e, const std::vector<double>& v) {
  e << YAML::Flow << YAML::BeginSeq;
  for (const double x : v) e << format_real(x);
  e << YAML::EndSeq;
}

}  // namespace

std::string emit_config(const RunConfig& c) {
  YAML::Emitter e;
  e << YAML::Flow << YAML::BeginMap;
  if (!c.preset.empty()) e << YAML::Key << "preset" << YAML::Value << c.preset;
  e << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  for (const auto name : trion_field_names()) {
    e << YAML::Key << std::string(name) << YAML::Value << format_real(field(c.model, name));
  }
  e << YAML::EndMap;
  if (c.sweep) {
    e << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "observable" << YAML::Value << std::string(to_string(c.sweep->observable));
    e << YAML::Key << "axes" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : c.sweep->axes) emit_axis(e, a);
    e << YAML::EndSeq << YAML::EndMap;
  }
  if (c.spectrum) {
    e << YAML::Key << "spectrum" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "channel" << YAML::Value << std::string(to_string(c.spectrum->channel));
    e << YAML::Key << "frequencies" << YAML::Value << YAML::BeginMap;
    emit_grid(e, c.spectrum->frequencies);
    e << YAML::EndMap << YAML::EndMap;
  }
  if (c.g2) {
    e << YAML::Key << "g2" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "channel_a" << YAML::Value << std::string(to_string(c.g2->channel_a));
    e << YAML::Key << "channel_b" << YAML::Value << std::string(to_string(c.g2->channel_b));
    e << YAML::Key << "delays" << YAML::Value << YAML::BeginMap;
    emit_grid(e, c.g2->delays);
    e << YAML::EndMap;
    e << YAML::Key << "jitter_sigma" << YAML::Value << format_real(c.g2->jitter_sigma);
    e << YAML::EndMap;
  }
  if (c.fit_rabi) {
    e << YAML::Key << "fit_rabi" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "powers" << YAML::Value;
    emit_reals(e, c.fit_rabi->powers);
    e << YAML::Key << "intensities" << YAML::Value;
    emit_reals(e, c.fit_rabi->intensities);
    if (c.fit_rabi->gamma_r) e << YAML::Key << "gamma_r" << YAML::Value << format_real(*c.fit_rabi->gamma_r);
    e << YAML::EndMap;
  }
  if (c.rate_compare) {
    e << YAML::Key << "rate_compare" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "axis" << YAML::Value;
    emit_axis(e, c.rate_compare->axis);
    e << YAML::EndMap;
  }
  if (!c.output.empty()) e << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << c.output;
  e << YAML::EndMap;
  return e.c_str();
}

double to_internal(std::string_view name, double value) {
  return is_frequency_field(name) ? kTwoPi * value : value;
}

TrionParams internal_params(const RunConfig& c) {
  TrionParams p;
  for (const auto name : trion_field_names()) set_field(p, name, to_internal(name, field(c.model, name)));
  return p;
}

}  // namespace trionsim::cli
