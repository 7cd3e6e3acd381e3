#pragma once

#include "params.hpp"

#include <complex>

namespace nonrecip {

using cplx = std::complex<double>;

// Steady-state observables at one parameter point.
struct ComplexResponse {
  cplx chi;             // emitter susceptibility seen by the cavity mode
  cplx amplitude;       // intracavity amplitude per unit probe amplitude
  double transmittance; // |sqrt(k1 k2) / (i dp + k/2 + i chi)|^2
  Direction direction;
};

// chi = -i |g|^2 / [gamma3 + i(delta_p + s1) + |Omega_c|^2 /
//                   (gamma12 + i(delta_p + s2))]
// with (s1, s2) the direction-dependent Doppler shifts. Throws
// NumericalError when the outer denominator vanishes (possible only for
// zero dephasings with conspiring detunings).
cplx susceptibility(const SystemParams &p, Direction d);

// sqrt(kappa1) / (i delta_p + kappa/2 + i chi). Valid only for
// delta_a = delta_c = 0 (resonant closed form); otherwise throws
// ContractError pointing at dynamics::solve_steady.
cplx cavity_amplitude(const SystemParams &p, Direction d);

double transmittance(const SystemParams &p, Direction d);

// kappa1 kappa2 / (delta_p^2 + (kappa/2)^2): the empty-cavity line at the
// same probe detuning, used to express transmission on a near-unity scale.
double empty_cavity_transmittance(const SystemParams &p);

double normalized_transmittance(const SystemParams &p, Direction d);

// eta = (T+ - T-) / (T+ + T-); defined as 0 when T+ + T- < 1e-30.
double contrast(const SystemParams &p);
double contrast_from(double t_plus, double t_minus);

ComplexResponse point_response(const SystemParams &p, Direction d);

} // namespace nonrecip
