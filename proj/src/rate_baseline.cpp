#include "trionsim/rate_baseline.hpp"

#include <cmath>

#include "trionsim/errors.hpp"

namespace trionsim {

double stimulated_rate(double omega_rabi, double delta, double linewidth) {
  if (!(linewidth > 0.0)) throw ArgumentError("stimulated_rate: linewidth must be > 0");
  const double half = 0.5 * linewidth;
  return 0.5 * omega_rabi * omega_rabi * half / (delta * delta + half * half);
}

double linewidth_st(const TrionParams& p) { return p.gamma_r; }

double linewidth_pt(const TrionParams& p) { return p.gamma_r + p.gamma_p_relax + 2.0 * p.gamma_p_deph; }

RatePopulations rate_steady_state(const TrionParams& p) {
  p.validate();
  const double w1 = stimulated_rate(p.omega1_rabi, p.delta1, linewidth_st(p));
  const double w2 = stimulated_rate(p.omega2_rabi, p.delta2, linewidth_pt(p));
  const double fund = channel_rate(p, EmissionChannel::fundamental);
  const double auger = channel_rate(p, EmissionChannel::auger);
  const double relax = p.gamma_p_relax;

  // d/dt (n_s, n_p, n_t) = M n; rows: s, p, t.
  Eigen::Matrix3cd m;
  m << -w1, relax, w1 + fund,
       0.0, -w2 - relax, w2 + auger,
       w1, w2, -(w1 + w2 + p.gamma_r);
  ComplexMatrix a = m;
  a.row(0).setOnes();
  ComplexVector rhs = ComplexVector::Zero(3);
  rhs(0) = 1.0;

  ComplexVector n;
  try {
    n = solve_linear(a, rhs);
  } catch (const SingularMatrixError&) {
    throw DegenerateSteadyStateError("rate_steady_state: balance equations are singular");
  }
  return {n(0).real(), n(1).real(), n(2).real()};
}

double rate_fluorescence_intensity(const TrionParams& p) {
  return channel_rate(p, EmissionChannel::fundamental) * rate_steady_state(p).n_t;
}

}  // namespace trionsim
