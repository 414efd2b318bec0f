#include "trionsim/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "trionsim/errors.hpp"
#include "trionsim/rate_baseline.hpp"

namespace trionsim {

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::fluorescence: return "fluorescence";
    case Observable::auger: return "auger";
    case Observable::rate_fluorescence: return "rate_fluorescence";
  }
  return "fluorescence";
}

Observable parse_observable(std::string_view name) {
  if (name == "fluorescence") return Observable::fluorescence;
  if (name == "auger") return Observable::auger;
  if (name == "rate_fluorescence") return Observable::rate_fluorescence;
  throw ArgumentError("unknown observable '" + std::string(name) + "'");
}

double evaluate(const TrionParams& p, Observable o) {
  switch (o) {
    case Observable::fluorescence: return fluorescence_intensity(p);
    case Observable::auger: return auger_intensity(p);
    case Observable::rate_fluorescence: return rate_fluorescence_intensity(p);
  }
  return 0.0;
}

SweepResult sweep(const TrionParams& base, std::span<const SweepAxis> axes, Observable o, unsigned threads) {
  if (axes.empty() || axes.size() > 2) throw ArgumentError("sweep: need one or two axes");
  for (const auto& axis : axes) {
    if (std::find(trion_field_names().begin(), trion_field_names().end(), axis.name) == trion_field_names().end()) {
      throw ArgumentError("sweep: unknown field '" + axis.name + "'");
    }
    if (axis.values.empty()) throw ArgumentError("sweep: axis '" + axis.name + "' is empty");
    for (const double v : axis.values) {
      if (!std::isfinite(v)) throw ArgumentError("sweep: axis '" + axis.name + "' has non-finite values");
    }
  }

  SweepResult r;
  r.axis1 = axes[0];
  if (axes.size() == 2) r.axis2 = axes[1];
  r.observable = o;
  const std::size_t n1 = r.rows(), n2 = r.cols(), total = n1 * n2;
  r.values.assign(total, 0.0);

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  std::vector<std::exception_ptr> errors(total);

  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < total; k += workers) {
      TrionParams p = base;
      set_field(p, r.axis1.name, r.axis1.values[k / n2]);
      if (r.axis2) set_field(p, r.axis2->name, r.axis2->values[k % n2]);
      try {
        r.values[k] = evaluate(p, o);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  // Report the failure at the lowest grid index so errors are reproducible too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return r;
}

std::vector<double> linspace(double start, double stop, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {start};
  std::vector<double> v(n);
  const double mid = 0.5 * (start + stop);
  const double step = (stop - start) / static_cast<double>(n - 1);
  const double centre_index = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = mid + (static_cast<double>(i) - centre_index) * step;
  v.front() = start;
  v.back() = stop;
  return v;
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  const auto it = std::lower_bound(x.begin(), x.end(), at);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const auto j = static_cast<std::size_t>(it - x.begin());
  if (x[j] == at) return y[j];
  const double f = (at - x[j - 1]) / (x[j] - x[j - 1]);
  return y[j - 1] + f * (y[j] - y[j - 1]);
}

}  // namespace

DipMetrics dip_metrics(const SweepResult& profile) {
  if (profile.axis2 || profile.cols() != 1) throw ArgumentError("dip_metrics: profile must be 1-D");
  const auto& x = profile.axis1.values;
  const auto& y = profile.values;
  const std::size_t n = x.size();
  if (n < 3) throw ArgumentError("dip_metrics: need at least 3 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x[i] > x[i - 1])) throw ArgumentError("dip_metrics: axis must be strictly ascending");
  }

  const std::size_t edge = std::max<std::size_t>(1, n / 10);
  double baseline = 0.0;
  for (std::size_t i = 0; i < edge; ++i) baseline += y[i] + y[n - 1 - i];
  baseline /= static_cast<double>(2 * edge);

  const auto c = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  DipMetrics m;
  m.depth = baseline > 0.0 ? std::clamp(1.0 - y[c] / baseline, 0.0, 1.0) : 0.0;

  m.center = x[c];
  if (c > 0 && c + 1 < n) {
    const double d0 = (y[c] - y[c - 1]) / (x[c] - x[c - 1]);
    const double d1 = (y[c + 1] - y[c]) / (x[c + 1] - x[c]);
    const double curvature = (d1 - d0) / (x[c + 1] - x[c - 1]);
    if (curvature > 0.0 && std::isfinite(curvature)) {
      m.center = std::clamp(0.5 * (x[c - 1] + x[c]) - d0 / (2.0 * curvature), x[c - 1], x[c + 1]);
    }
  }

  const double half_window = std::min(m.center - x.front(), x.back() - m.center);
  const double step = (x.back() - x.front()) / static_cast<double>(n - 1);
  const auto steps = static_cast<std::size_t>(std::floor(half_window / step + 1e-9));
  if (steps == 0) return m;

  double signed_area = 0.0, abs_area = 0.0, scale = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double delta = static_cast<double>(k) * step;
    const double hi = interpolate(x, y, m.center + delta);
    const double lo = interpolate(x, y, m.center - delta);
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    signed_area += w * (hi - lo);
    abs_area += w * std::abs(hi - lo);
    scale += w * (std::abs(hi) + std::abs(lo));
  }
  m.asymmetry = abs_area > 1e-12 * scale ? signed_area / abs_area : 0.0;
  return m;
}

bool dip_window_sufficient(const SweepResult& profile, const TrionParams& p, double center) {
  const double reach = 10.0 * 0.5 * linewidth_pt(p);
  const auto& x = profile.axis1.values;
  return !x.empty() && center - x.front() >= reach && x.back() - center >= reach;
}

double two_level_excited_population(double omega_rabi, double delta, double gamma) {
  const double o2 = omega_rabi * omega_rabi;
  return 0.25 * o2 / (delta * delta + 0.25 * gamma * gamma + 0.5 * o2);
}

SweepResult saturation_curve(const TrionParams& p, std::span<const double> omega1_values) {
  if (p.omega2_rabi != 0.0) throw ArgumentError("saturation_curve: requires omega2 == 0");
  const SweepAxis axis{"omega1_rabi", {omega1_values.begin(), omega1_values.end()}};
  return sweep(p, std::span<const SweepAxis>(&axis, 1), Observable::fluorescence);
}

SaturationFit fit_rabi_from_power(std::span<const double> powers, std::span<const double> intensities,
                                  double gamma_r) {
  if (powers.size() != intensities.size()) throw ArgumentError("fit_rabi_from_power: length mismatch");
  if (powers.size() < 5) throw ArgumentError("fit_rabi_from_power: need at least 5 data points");
  if (!(gamma_r > 0.0)) throw ArgumentError("fit_rabi_from_power: gamma_r must be > 0");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 0.0) || !std::isfinite(powers[i])) throw ArgumentError("fit_rabi_from_power: powers must be > 0");
    if (!std::isfinite(intensities[i])) throw ArgumentError("fit_rabi_from_power: intensities must be finite");
  }

  SaturationFit fit;
  fit.fixed_gamma_r = gamma_r;
  if (std::all_of(intensities.begin(), intensities.end(), [](double v) { return v == 0.0; })) return fit;

  struct Eval {
    double residual;
    double scale;
  };
  auto eval = [&](double log_k) {
    const double k = std::exp(log_k);
    double fy = 0.0, ff = 0.0;
    std::vector<double> f(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
      f[i] = two_level_excited_population(k * std::sqrt(powers[i]), 0.0, gamma_r);
      fy += f[i] * intensities[i];
      ff += f[i] * f[i];
    }
    const double scale = ff > 0.0 ? fy / ff : 0.0;
    double rss = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      const double r = intensities[i] - scale * f[i];
      rss += r * r;
    }
    return Eval{rss, scale};
  };

  const auto [pmin, pmax] = std::minmax_element(powers.begin(), powers.end());
  const double lo = std::log(1e-3 * gamma_r / std::sqrt(*pmax));
  const double hi = std::log(1e3 * gamma_r / std::sqrt(*pmin));
  constexpr int kScan = 400;
  std::vector<double> grid(kScan + 1), rss(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    grid[i] = lo + (hi - lo) * i / kScan;
    rss[i] = eval(grid[i]).residual;
  }
  const auto best = static_cast<int>(std::min_element(rss.begin(), rss.end()) - rss.begin());
  if (best == 0 || best == kScan) {
    const auto e = eval(grid[best]);
    throw FitError("fit_rabi_from_power: optimum lies on the search boundary", std::exp(grid[best]),
                   std::sqrt(e.residual));
  }

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = grid[best - 1], b = grid[best + 1];
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = eval(x1).residual, f2 = eval(x2).residual;
  int iter = 0;
  for (; iter < 200 && b - a > 1e-13; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1).residual;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2).residual;
    }
  }
  const double log_k = 0.5 * (a + b);
  const auto e = eval(log_k);
  if (b - a > 1e-13) {
    throw FitError("fit_rabi_from_power: golden-section search did not converge", std::exp(log_k),
                   std::sqrt(e.residual));
  }
  fit.omega_at_unit_power = std::exp(log_k);
  fit.scale = e.scale;
  fit.residual_norm = std::sqrt(e.residual);
  return fit;
}

}  // namespace trionsim
