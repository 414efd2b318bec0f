#pragma once

// Two-time quantities from the quantum regression theorem.

#include <span>
#include <vector>

#include "trionsim/trion_model.hpp"

namespace trionsim {

/// Incoherent emission spectrum on a frequency grid (rad/ns).
///
/// Frequencies are relative to the laser whose rotating frame the emitting
/// transition lives in: laser 1 for the fundamental line, laser 2 for the
/// Auger line. Positive frequency is blue of that laser.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> values;  // arbitrary units, >= 0 up to round-off
  EmissionChannel channel = EmissionChannel::fundamental;
};

/// Normalized second-order correlation g2_ab(tau). For tau >= 0 a photon of
/// channel_a is detected first; negative delays exchange the two channels.
struct CorrelationTrace {
  std::vector<double> delays;  // ns, ascending
  std::vector<double> values;
  EmissionChannel channel_a = EmissionChannel::fundamental;
  EmissionChannel channel_b = EmissionChannel::fundamental;
  double rate_a = 0.0;  // steady-state photon rate of channel_a, 1/ns
  double rate_b = 0.0;
};

/// S(w) = Re int_0^inf e^{i w tau} <dsig+(0) dsig-(tau)> dtau, where
/// dsig = sig - <sig> removes the coherently scattered (elastic) part.
///
/// Each frequency costs one linear solve of the resolvent. The stationary
/// eigenvalue is deflated with the rank-one term vec(rho_ss) tr(.), which is
/// exact on the traceless source and keeps w = 0 regular. A grid point that
/// still hits a pole is nudged by 1e-9 rad/ns.
Spectrum emission_spectrum(const TrionParams& p, EmissionChannel channel,
                           std::span<const double> frequencies);

/// g2_ab(tau) = tr[B^dag B e^{L tau}(A rho A^dag)] / (tr[A^dag A rho] tr[B^dag B rho]).
///
/// Delays must be ascending. Throws NormalizationError when either channel
/// has zero rate. `tol` is the local error per integrator step.
CorrelationTrace g2(const TrionParams& p, EmissionChannel channel_a, EmissionChannel channel_b,
                    std::span<const double> delays, double tol = 1e-11);

/// Distance between the two highest local maxima (each refined by a parabola
/// through its neighbours). Maxima below 5% of the global maximum are
/// ignored; throws NoSplittingError when fewer than two remain.
double extract_splitting(const Spectrum& s);

/// First delay tau >= 0 at which the trace reaches `level` from below
/// (linear interpolation between samples).
double half_recovery_delay(const CorrelationTrace& g, double level = 0.5);

/// Angular frequency of the oscillation at tau > 0 from the mean spacing of
/// the first `max_peaks` local maxima.
double oscillation_frequency(const CorrelationTrace& g, std::size_t max_peaks = 4);

/// Gaussian detector-jitter convolution (standard deviation sigma, ns) for
/// visual comparison with measured histograms. Needs a uniform delay grid.
CorrelationTrace apply_detector_jitter(const CorrelationTrace& g, double sigma);

}  // namespace trionsim
