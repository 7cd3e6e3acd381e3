#pragma once

#include "params.hpp"
#include "steady_state.hpp"

#include <array>
#include <vector>

namespace nonrecip {

// Mean-field expectation values (a, sigma13, sigma12) at time t. The system
// starts from (0, 0, 0): emitter pumped into |1>, cavity empty.
struct MeanFieldState {
  cplx a;
  cplx sigma13;
  cplx sigma12;
  double t = 0.0;
};

// x' = drift x + drive for x = (a, sigma13, sigma12):
//
//   a'       = -(i(delta_a + delta_p) + kappa/2) a - i g sigma13
//              + sqrt(kappa1) a_p
//   sigma13' = -(gamma3 + i(delta_p + s1)) sigma13 - i Omega_c sigma12
//              - i g a
//   sigma12' = -(gamma12 + i(delta_p - delta_c + s2)) sigma12
//              - i Omega_c sigma13
//
// The populations are frozen at sigma11 = 1, sigma33 = sigma32 = 0
// (weak probe) and the noise means are zero. The cavity row carries
// delta_a + delta_p: the cavity is referenced to the emitter transition, so
// at delta_a = 0 the elimination of the coherences reproduces the closed
// form of steady_state exactly, probe detuning included.
struct LinearSystem {
  std::array<std::array<cplx, 3>, 3> drift;
  std::array<cplx, 3> drive;

  double inf_norm() const; // max row sum of |entries|
};

LinearSystem build_linear_system(const SystemParams &p, Direction d,
                                 cplx probe_amplitude);

// Classical fixed-step 4th-order integration from the zero state. Requires
// t_end > 0, dt > 0 and dt * ||drift||_inf < 0.1 (throws NumericalError
// recommending a smaller step otherwise). States are recorded every
// output_stride steps; the final state is always recorded. Divergence
// (non-finite state) throws NumericalError with the step index.
std::vector<MeanFieldState> integrate(const LinearSystem &sys, double t_end,
                                      double dt, std::size_t output_stride = 1);

// -drift^{-1} drive by direct 3x3 elimination with partial pivoting.
// Throws NumericalError for singular drift (zero damping).
MeanFieldState solve_steady(const LinearSystem &sys);

} // namespace nonrecip
