#include "trionsim/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "trionsim/errors.hpp"

namespace trionsim {

namespace {

void require_ascending(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || (i > 0 && xs[i] < xs[i - 1])) {
      throw ArgumentError(std::string(what) + ": grid must be finite and ascending");
    }
  }
}

// Vertex abscissa of the parabola through (x0,y0), (x1,y1), (x2,y2); falls
// back to x1 when the points are collinear.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double curvature = (d1 - d0) / (x2 - x0);
  if (curvature == 0.0 || !std::isfinite(curvature)) return x1;
  const double v = 0.5 * (x0 + x1) - d0 / (2.0 * curvature);
  return std::clamp(v, x0, x2);
}

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) idx.push_back(i);
  }
  return idx;
}

}  // namespace

Spectrum emission_spectrum(const TrionParams& p, EmissionChannel channel,
                           std::span<const double> frequencies) {
  require_ascending(frequencies, "emission_spectrum");
  const auto l = trion_liouvillian(p);
  const auto rho = steady_state(l).matrix();
  const auto d = l.hilbert_dim();
  const ComplexMatrix sigma = jump_operator(channel);

  // Source rho sig+ with the stationary (elastic) component projected out.
  const ComplexMatrix source_op = rho * sigma.adjoint();
  const ComplexVector source = vec(source_op - source_op.trace() * rho);
  const Eigen::RowVectorXcd readout = observable_functional(sigma);

  ComplexMatrix base = -l.matrix() + vec(rho) * trace_functional(d);
  const auto n = base.rows();
  const Complex i_unit(0.0, 1.0);

  Spectrum s;
  s.channel = channel;
  s.frequencies.assign(frequencies.begin(), frequencies.end());
  s.values.reserve(frequencies.size());
  for (const double w : frequencies) {
    ComplexVector y;
    try {
      y = solve_linear(base - i_unit * w * ComplexMatrix::Identity(n, n), source);
    } catch (const SingularMatrixError&) {
      y = solve_linear(base - i_unit * (w + 1e-9) * ComplexMatrix::Identity(n, n), source);
    }
    s.values.push_back((readout * y)(0).real());
  }
  return s;
}

CorrelationTrace g2(const TrionParams& p, EmissionChannel channel_a, EmissionChannel channel_b,
                    std::span<const double> delays, double tol) {
  require_ascending(delays, "g2");
  if (channel_rate(p, channel_a) == 0.0 || channel_rate(p, channel_b) == 0.0) {
    throw NormalizationError("g2: a requested channel has zero emission rate");
  }
  const auto l = trion_liouvillian(p);
  const ComplexMatrix rho = steady_state(l).matrix();

  const ComplexMatrix a = jump_operator(channel_a);
  const ComplexMatrix b = jump_operator(channel_b);
  const double occ_a = (a.adjoint() * a * rho).trace().real();
  const double occ_b = (b.adjoint() * b * rho).trace().real();
  if (!(occ_a > 0.0) || !(occ_b > 0.0)) {
    throw NormalizationError("g2: a requested channel has zero steady-state emission");
  }

  // Conditional evolution for one ordering (first, second) over the given
  // non-negative delays; returns values keyed by delay.
  auto run = [&](const ComplexMatrix& first, const ComplexMatrix& second, double occ_first, double occ_second,
                 std::vector<double> taus) {
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const ComplexMatrix conditioned = first * rho * first.adjoint() / occ_first;
    const auto readout = observable_functional(second.adjoint() * second);
    const auto states = evolve(l, vec(conditioned), taus, tol);
    std::map<double, double> out;
    for (std::size_t i = 0; i < taus.size(); ++i) out[taus[i]] = (readout * states[i])(0).real() / occ_second;
    return out;
  };

  std::vector<double> positive, negative;
  for (const double tau : delays) (tau >= 0.0 ? positive : negative).push_back(std::abs(tau));

  std::map<double, double> forward, backward;
  if (channel_a == channel_b) {
    std::vector<double> all = positive;
    all.insert(all.end(), negative.begin(), negative.end());
    forward = run(a, b, occ_a, occ_b, all);
    backward = forward;
  } else {
    if (!positive.empty()) forward = run(a, b, occ_a, occ_b, positive);
    if (!negative.empty()) backward = run(b, a, occ_b, occ_a, negative);
  }

  CorrelationTrace g;
  g.channel_a = channel_a;
  g.channel_b = channel_b;
  g.rate_a = channel_rate(p, channel_a) * occ_a;
  g.rate_b = channel_rate(p, channel_b) * occ_b;
  g.delays.assign(delays.begin(), delays.end());
  g.values.reserve(delays.size());
  for (const double tau : delays) {
    g.values.push_back(tau >= 0.0 ? forward.at(tau) : backward.at(-tau));
  }
  return g;
}

double extract_splitting(const Spectrum& s) {
  const auto& x = s.frequencies;
  const auto& y = s.values;
  if (x.size() != y.size() || x.size() < 3) throw ArgumentError("extract_splitting: need at least 3 samples");
  const double peak = *std::max_element(y.begin(), y.end());

  auto idx = local_maxima(y);
  std::erase_if(idx, [&](std::size_t i) { return !(y[i] > 0.05 * peak); });
  if (idx.size() < 2) throw NoSplittingError("extract_splitting: fewer than two peaks above 5% of maximum");
  std::partial_sort(idx.begin(), idx.begin() + 2, idx.end(),
                    [&](std::size_t i, std::size_t j) { return y[i] > y[j]; });

  auto refine = [&](std::size_t i) { return parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]); };
  return std::abs(refine(idx[0]) - refine(idx[1]));
}

double half_recovery_delay(const CorrelationTrace& g, double level) {
  const auto& t = g.delays;
  const auto& v = g.values;
  std::size_t start = 0;
  while (start < t.size() && t[start] < 0.0) ++start;
  for (std::size_t i = start; i < t.size(); ++i) {
    if (v[i] >= level) {
      if (i == start) return t[i];
      const double frac = (level - v[i - 1]) / (v[i] - v[i - 1]);
      return t[i - 1] + frac * (t[i] - t[i - 1]);
    }
  }
  throw NumericalError("half_recovery_delay: trace never reaches the requested level");
}

double oscillation_frequency(const CorrelationTrace& g, std::size_t max_peaks) {
  const auto& t = g.delays;
  const auto& v = g.values;
  std::vector<double> peaks;
  for (const auto i : local_maxima(v)) {
    if (t[i - 1] <= 0.0) continue;
    peaks.push_back(parabola_vertex(t[i - 1], v[i - 1], t[i], v[i], t[i + 1], v[i + 1]));
    if (peaks.size() == max_peaks) break;
  }
  if (peaks.size() < 2) throw NumericalError("oscillation_frequency: fewer than two maxima at positive delay");
  const double period = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  return kTwoPi / period;
}

CorrelationTrace apply_detector_jitter(const CorrelationTrace& g, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("apply_detector_jitter: sigma must be >= 0");
  CorrelationTrace out = g;
  const auto n = g.delays.size();
  if (sigma == 0.0 || n < 2) return out;

  const double step = (g.delays.back() - g.delays.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(g.delays[i] - g.delays[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(step))) {
      throw ArgumentError("apply_detector_jitter: delay grid must be uniform");
    }
  }
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(5.0 * sigma / step));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0, weight = 0.0;
    for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
      const auto j = static_cast<std::ptrdiff_t>(i) + k;
      if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
      const double u = static_cast<double>(k) * step / sigma;
      const double w = std::exp(-0.5 * u * u);
      acc += w * g.values[static_cast<std::size_t>(j)];
      weight += w;
    }
    out.values[i] = acc / weight;
  }
  return out;
}

}  // namespace trionsim
