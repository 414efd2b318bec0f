#include "trionsim/trion_model.hpp"

#include <array>
#include <cmath>
#include <string>

#include "trionsim/errors.hpp"

namespace trionsim {

namespace {

using Member = double TrionParams::*;

struct FieldEntry {
  std::string_view name;
  Member member;
  bool frequency;
};

constexpr std::array<FieldEntry, 8> kFields{{
    {"omega1_rabi", &TrionParams::omega1_rabi, true},
    {"omega2_rabi", &TrionParams::omega2_rabi, true},
    {"delta1", &TrionParams::delta1, true},
    {"delta2", &TrionParams::delta2, true},
    {"gamma_r", &TrionParams::gamma_r, true},
    {"branching_b", &TrionParams::branching_b, false},
    {"gamma_p_relax", &TrionParams::gamma_p_relax, true},
    {"gamma_p_deph", &TrionParams::gamma_p_deph, true},
}};

const FieldEntry& lookup(std::string_view name) {
  for (const auto& f : kFields) {
    if (f.name == name) return f;
  }
  throw ArgumentError("unknown TrionParams field '" + std::string(name) + "'");
}

}  // namespace

void TrionParams::validate() const {
  for (const auto& f : kFields) {
    if (!std::isfinite(this->*f.member)) throw ArgumentError(std::string(f.name) + " is not finite");
  }
  if (omega1_rabi < 0.0) throw ArgumentError("omega1_rabi must be >= 0");
  if (omega2_rabi < 0.0) throw ArgumentError("omega2_rabi must be >= 0");
  if (!(gamma_r > 0.0)) throw ArgumentError("gamma_r must be > 0");
  if (branching_b < 0.0 || branching_b >= 1.0) throw ArgumentError("branching_b out of range [0, 1)");
  if (gamma_p_relax < 0.0) throw ArgumentError("gamma_p_relax must be >= 0");
  if (gamma_p_deph < 0.0) throw ArgumentError("gamma_p_deph must be >= 0");
}

const std::vector<std::string_view>& trion_field_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& f : kFields) v.push_back(f.name);
    return v;
  }();
  return names;
}

double field(const TrionParams& p, std::string_view name) { return p.*(lookup(name).member); }

void set_field(TrionParams& p, std::string_view name, double value) { p.*(lookup(name).member) = value; }

bool is_frequency_field(std::string_view name) { return lookup(name).frequency; }

std::string_view to_string(EmissionChannel c) {
  return c == EmissionChannel::fundamental ? "fundamental" : "auger";
}

EmissionChannel parse_channel(std::string_view name) {
  if (name == "fundamental") return EmissionChannel::fundamental;
  if (name == "auger") return EmissionChannel::auger;
  throw ArgumentError("unknown emission channel '" + std::string(name) + "'");
}

ComplexMatrix jump_operator(EmissionChannel c) {
  ComplexMatrix op = ComplexMatrix::Zero(trion_basis::dim, trion_basis::dim);
  op(c == EmissionChannel::fundamental ? trion_basis::s : trion_basis::p, trion_basis::t) = 1.0;
  return op;
}

double channel_rate(const TrionParams& p, EmissionChannel c) {
  return c == EmissionChannel::fundamental ? p.gamma_r * (1.0 - p.branching_b) : p.gamma_r * p.branching_b;
}

ComplexMatrix hamiltonian(const TrionParams& p) {
  using namespace trion_basis;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  h(t, t) = -p.delta1;
  h(trion_basis::p, trion_basis::p) = -(p.delta1 - p.delta2);
  h(t, s) = h(s, t) = 0.5 * p.omega1_rabi;
  h(t, trion_basis::p) = h(trion_basis::p, t) = 0.5 * p.omega2_rabi;
  return h;
}

std::vector<DissipationChannel> channels(const TrionParams& p) {
  using namespace trion_basis;
  const auto space = HilbertSpace::trion();
  return {
      {projector(space, s, t), channel_rate(p, EmissionChannel::fundamental)},
      {projector(space, trion_basis::p, t), channel_rate(p, EmissionChannel::auger)},
      {projector(space, s, trion_basis::p), p.gamma_p_relax},
      {projector(space, trion_basis::p, trion_basis::p), 2.0 * p.gamma_p_deph},
  };
}

Liouvillian trion_liouvillian(const TrionParams& p) {
  p.validate();
  const auto ch = channels(p);
  return build_liouvillian(hamiltonian(p), ch);
}

DensityMatrix trion_steady_state(const TrionParams& p) { return steady_state(trion_liouvillian(p)); }

double fluorescence_intensity(const TrionParams& p) {
  return channel_rate(p, EmissionChannel::fundamental) * trion_steady_state(p).population(trion_basis::t);
}

double auger_intensity(const TrionParams& p) {
  return channel_rate(p, EmissionChannel::auger) * trion_steady_state(p).population(trion_basis::t);
}

double dressed_splitting(const TrionParams& p) {
  if (p.omega2_rabi != 0.0) throw ArgumentError("dressed_splitting: defined for omega2 == 0 only");
  const ComplexMatrix h = hamiltonian(p);
  ComplexMatrix block(2, 2);
  block << h(trion_basis::s, trion_basis::s), h(trion_basis::s, trion_basis::t),
      h(trion_basis::t, trion_basis::s), h(trion_basis::t, trion_basis::t);
  const auto eig = eig_hermitian(block);
  return eig.values(1) - eig.values(0);
}

}  // namespace trionsim
