#pragma once

// Coherence-free population model of the same Lambda system. Coherences are
// adiabatically eliminated into Lorentzian stimulated rates, so every
// quantity depends on delta2 only through delta2^2.

#include "trionsim/trion_model.hpp"

namespace trionsim {

struct RatePopulations {
  double n_s = 1.0;
  double n_p = 0.0;
  double n_t = 0.0;
};

/// W = (omega^2 / 2) (linewidth / 2) / (delta^2 + (linewidth / 2)^2).
/// `linewidth` is the full width of the driven transition; throws
/// ArgumentError unless it is positive.
double stimulated_rate(double omega_rabi, double delta, double linewidth);

/// Full linewidths used for the two stimulated rates: gamma_r for s-t and
/// gamma_r + gamma_p_relax + 2 gamma_p_deph for p-t.
double linewidth_st(const TrionParams& p);
double linewidth_pt(const TrionParams& p);

RatePopulations rate_steady_state(const TrionParams& p);

/// gamma_r (1 - b) n_t
double rate_fluorescence_intensity(const TrionParams& p);

}  // namespace trionsim
