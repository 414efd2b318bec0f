#pragma once

// Parameter sweeps over TrionParams fields, fluorescence-dip metrics and
// Rabi-frequency calibration from power-saturation curves.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trionsim/trion_model.hpp"

namespace trionsim {

enum class Observable { fluorescence, auger, rate_fluorescence };

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view name);

/// Steady-state observable at one parameter point, in photons/ns.
double evaluate(const TrionParams& p, Observable o);

struct SweepAxis {
  std::string name;  // a TrionParams field
  std::vector<double> values;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepResult {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  /// values[i * n2 + j] at (axis1[i], axis2[j]); n2 = 1 without a second axis.
  std::vector<double> values;
  Observable observable = Observable::fluorescence;

  std::size_t rows() const noexcept { return axis1.values.size(); }
  std::size_t cols() const noexcept { return axis2 ? axis2->values.size() : 1; }
  double at(std::size_t i, std::size_t j = 0) const { return values[i * cols() + j]; }
};

/// Evaluates `o` on the grid spanned by one or two axes. Each point is
/// independent; `threads` workers fill preallocated slots, so the result does
/// not depend on the thread count.
SweepResult sweep(const TrionParams& base, std::span<const SweepAxis> axes, Observable o,
                  unsigned threads = 1);

/// n points from start to stop inclusive. Points mirrored about the midpoint
/// are exact negatives of each other when start == -stop.
std::vector<double> linspace(double start, double stop, std::size_t n);

struct DipMetrics {
  double depth = 0.0;      // 1 - min / baseline, clamped to [0, 1]
  double center = 0.0;     // refined position of the minimum
  double asymmetry = 0.0;  // signed, in [-1, 1]
};

/// Metrics of a 1-D profile I(x).
///
/// baseline: mean of the outer 10% of samples on each edge.
/// center: argmin refined by a parabola through its neighbours.
/// asymmetry: int (I(c + d) - I(c - d)) dd / int |I(c + d) - I(c - d)| dd
///   over the largest window around the centre that fits in the samples.
///   Differences below 1e-12 of the profile scale count as exactly even.
DipMetrics dip_metrics(const SweepResult& profile);

/// Whether a delta2 profile extends at least 10 half-widths of the p-t
/// transition on both sides of its centre.
bool dip_window_sufficient(const SweepResult& profile, const TrionParams& p, double center);

/// Analytic excited-state population of a driven two-level system with
/// radiative decay gamma: (omega^2/4) / (delta^2 + gamma^2/4 + omega^2/2).
double two_level_excited_population(double omega_rabi, double delta, double gamma);

/// Fluorescence versus omega1 with laser 2 off. Requires omega2 == 0.
SweepResult saturation_curve(const TrionParams& p, std::span<const double> omega1_values);

struct SaturationFit {
  double omega_at_unit_power = 0.0;  // k in omega = k sqrt(P), rad/ns per sqrt(power unit)
  double scale = 0.0;                // intensity at full saturation of rho_ee (rho_ee -> 1/2 gives scale/2)
  double residual_norm = 0.0;
  double fixed_gamma_r = 0.0;
};

/// Least squares of I = scale * rho_ee(k sqrt(P); gamma_r, delta = 0) over
/// (scale, k) with gamma_r held fixed. The scale is eliminated in closed
/// form; k is found by a log-spaced scan followed by golden-section search.
///
/// All-zero intensities return k = 0 with zero residual. Throws ArgumentError
/// for fewer than 5 points or non-positive powers, FitError (with the best
/// iterate) when the search does not converge inside its bracket.
SaturationFit fit_rabi_from_power(std::span<const double> powers, std::span<const double> intensities,
                                  double gamma_r);

}  // namespace trionsim
