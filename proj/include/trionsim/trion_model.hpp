#pragma once

// Two-laser Lambda system of a quantum-dot trion.
//
//   |t>  trion (optically excited)
//   |s>  single electron in the s-shell (ground state)
//   |p>  single electron in a p-shell, reached by radiative Auger emission
//
// Laser 1 drives s-t with Rabi frequency omega1 at detuning delta1, laser 2
// drives p-t with omega2 at delta2. All quantities are angular, in rad/ns.
// A red-detuned laser has delta < 0.

#include <cstddef>
#include <string_view>
#include <vector>

#include "trionsim/lindblad.hpp"

namespace trionsim {

namespace trion_basis {
inline constexpr std::size_t s = 0;
inline constexpr std::size_t p = 1;
inline constexpr std::size_t t = 2;
inline constexpr std::size_t dim = 3;
}  // namespace trion_basis

/// Default fraction of the trion radiative decay that takes the Auger channel.
inline constexpr double kDefaultBranching = 0.01;

struct TrionParams {
  double omega1_rabi = 0.0;    // s-t drive
  double omega2_rabi = 0.0;    // p-t drive
  double delta1 = 0.0;         // laser 1 detuning from s-t
  double delta2 = 0.0;         // laser 2 detuning from p-t
  double gamma_r = kTwoPi * 0.50;        // total trion radiative decay
  double branching_b = kDefaultBranching;  // fraction of radiative decay into t -> p
  double gamma_p_relax = kTwoPi * 9.3;   // non-radiative p -> s relaxation
  double gamma_p_deph = kTwoPi * 8.8;    // pure dephasing of p (coherence decay rate)

  bool operator==(const TrionParams&) const = default;

  /// Throws ArgumentError when a field is non-finite, a rate is negative,
  /// gamma_r <= 0 or branching_b is outside [0, 1).
  void validate() const;
};

/// Names accepted by field() and set_field(): omega1_rabi, omega2_rabi,
/// delta1, delta2, gamma_r, branching_b, gamma_p_relax, gamma_p_deph.
const std::vector<std::string_view>& trion_field_names();
double field(const TrionParams& p, std::string_view name);
void set_field(TrionParams& p, std::string_view name, double value);
/// True for fields measured in angular frequency units (all but branching_b).
bool is_frequency_field(std::string_view name);

enum class EmissionChannel { fundamental, auger };

std::string_view to_string(EmissionChannel c);
EmissionChannel parse_channel(std::string_view name);

/// Jump operator of an emission channel: |s><t| or |p><t|.
ComplexMatrix jump_operator(EmissionChannel c);
double channel_rate(const TrionParams& p, EmissionChannel c);

/// Rotating-frame Hamiltonian in the (s, p, t) basis:
///   H = -delta1 |t><t| - (delta1 - delta2) |p><p|
///       + omega1/2 (|t><s| + h.c.) + omega2/2 (|t><p| + h.c.)
ComplexMatrix hamiltonian(const TrionParams& p);

/// Fundamental emission, Auger emission, p -> s relaxation, p dephasing (rate 2*gamma_p_deph).
std::vector<DissipationChannel> channels(const TrionParams& p);

Liouvillian trion_liouvillian(const TrionParams& p);
DensityMatrix trion_steady_state(const TrionParams& p);

/// Steady-state photon rate of the fundamental line, gamma_r (1 - b) rho_tt, in 1/ns.
double fluorescence_intensity(const TrionParams& p);
/// Steady-state photon rate of the Auger line, gamma_r b rho_tt, in 1/ns.
double auger_intensity(const TrionParams& p);

/// Dressed-state splitting sqrt(omega1^2 + delta1^2) of the single-laser
/// s-t system. Requires omega2 == 0.
double dressed_splitting(const TrionParams& p);

}  // namespace trionsim
