#include "steady_state.hpp"

#include "errors.hpp"

#include <cmath>

namespace nonrecip {

namespace {

constexpr double contrast_floor = 1.0e-30;
constexpr cplx i_unit{0.0, 1.0};

void require_resonant_cavity(const SystemParams &p, const char *op) {
  if (p.delta_a != 0.0 || p.delta_c != 0.0)
    throw ContractError(
        std::string(op) +
        ": closed form requires delta_a = delta_c = 0; use "
        "dynamics::solve_steady for detuned cavities");
}

} // namespace

cplx susceptibility(const SystemParams &p, Direction d) {
  const DopplerShifts s = doppler_shifts(p, d);
  const cplx inner = p.gamma12 + i_unit * (p.delta_p + s.two_photon);
  cplx outer = p.gamma3 + i_unit * (p.delta_p + s.single_photon);
  if (p.omega_c_rabi != 0.0) {
    if (inner == cplx{0.0, 0.0})
      return {0.0, 0.0}; // control term diverges, response is shorted out
    outer += (p.omega_c_rabi * p.omega_c_rabi) / inner;
  }
  if (outer == cplx{0.0, 0.0})
    throw NumericalError(
        "susceptibility: zero denominator gamma3 + i(delta_p + s1) + "
        "|Omega_c|^2/(gamma12 + i(delta_p + s2))");
  return -i_unit * (p.g * p.g) / outer;
}

cplx cavity_amplitude(const SystemParams &p, Direction d) {
  require_resonant_cavity(p, "cavity_amplitude");
  const cplx chi = susceptibility(p, d);
  return std::sqrt(p.kappa1) /
         (i_unit * p.delta_p + 0.5 * p.kappa() + i_unit * chi);
}

double transmittance(const SystemParams &p, Direction d) {
  require_resonant_cavity(p, "transmittance");
  const cplx chi = susceptibility(p, d);
  const cplx denom = i_unit * p.delta_p + 0.5 * p.kappa() + i_unit * chi;
  return p.kappa1 * p.kappa2 / std::norm(denom);
}

double empty_cavity_transmittance(const SystemParams &p) {
  const double half_kappa = 0.5 * p.kappa();
  return p.kappa1 * p.kappa2 /
         (p.delta_p * p.delta_p + half_kappa * half_kappa);
}

double normalized_transmittance(const SystemParams &p, Direction d) {
  return transmittance(p, d) / empty_cavity_transmittance(p);
}

double contrast_from(double t_plus, double t_minus) {
  const double sum = t_plus + t_minus;
  if (sum < contrast_floor)
    return 0.0;
  return (t_plus - t_minus) / sum;
}

double contrast(const SystemParams &p) {
  return contrast_from(transmittance(p, Direction::co),
                       transmittance(p, Direction::counter));
}

ComplexResponse point_response(const SystemParams &p, Direction d) {
  ComplexResponse r;
  r.direction = d;
  r.chi = susceptibility(p, d);
  r.amplitude = cavity_amplitude(p, d);
  r.transmittance = p.kappa2 * std::norm(r.amplitude);
  return r;
}

} // namespace nonrecip
