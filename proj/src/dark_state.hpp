#pragma once

#include "params.hpp"
#include "steady_state.hpp"

#include <array>
#include <string_view>

namespace nonrecip {

using Matrix3 = std::array<std::array<cplx, 3>, 3>;
using Vector3 = std::array<cplx, 3>;

// Effective non-Hermitian Hamiltonian of the dressed three-level system in
// the ordered basis (|1>, |3>, |2>):
//
//     [ 0    g     0   ]
//     [ g   w1   Oc    ]        w1 = delta - i gamma3   (single photon)
//     [ 0   Oc    w2   ]        w2 = Delta - i gamma12  (two photon)
//
// delta and Delta include the direction-dependent Doppler shifts.
struct EffectiveHamiltonian {
  Matrix3 matrix;
  cplx omega1;
  cplx omega2;
  double big_omega; // sqrt(g^2 + Omega_c^2)

  double g() const { return matrix[0][1].real(); }
  double omega_c() const { return matrix[1][2].real(); }
  double gamma3() const { return -omega1.imag(); }
  double gamma12() const { return -omega2.imag(); }
};

enum class StateLabel { dark, bright_plus, bright_minus };
std::string_view to_string(StateLabel s);

// Entries are stored in the fixed order (dark, bright_plus, bright_minus);
// labels[] records that order explicitly. vectors are unit Euclidean norm.
// normalizers carries the Euclidean norms of the unnormalized approximate
// states when produced by the approximate path (zeros otherwise).
struct EigenSet {
  Vector3 values;
  std::array<Vector3, 3> vectors;
  std::array<StateLabel, 3> labels;
  std::array<double, 3> normalizers;
};

// Raw eigensolution of a general complex 3x3 matrix: closed-form cubic
// characteristic roots, one Newton polish per root, null-space vectors from
// row cross products. max_residual is max_i ||A v_i - lambda_i v_i||.
struct Eigen3 {
  Vector3 values;
  std::array<Vector3, 3> vectors;
  double max_residual;
};
Eigen3 eigen3x3(const Matrix3 &m);

EffectiveHamiltonian build_effective_hamiltonian(const SystemParams &p,
                                                 Direction d);

// Numerically exact eigenpairs, ordered to match the approximate states by
// maximal overlap. Throws NumericalError (carrying the residual) when the
// residual check fails, which flags defective or near-defective inputs.
EigenSet exact_eigendecompose(const EffectiveHamiltonian &h);

// The leading-order dark/bright eigenvectors:
//   |E1> ~  (w1 w2 - Oc^2)|1> - g w2|3> + g Oc|2>
//   |E2> ~  ((W-w1)(W-w2) - Oc^2)|1> + g(W-w2)|3> + g Oc|2>
//   |E3> ~  ((W+w1)(W+w2) - Oc^2)|1> - g(W+w2)|3> + g Oc|2>
// each divided by its Euclidean norm N_i, with W = big_omega. Eigenvalue
// estimates: dark (g^2/W^2) w2, bright +-W + (w1 + Oc^2 w2 / W^2)/2.
// Throws NumericalError when some N_i vanishes (degenerate input).
EigenSet approximate_eigenstates(const EffectiveHamiltonian &h);

// Amplitudes in the (|1>,|3>,|2>) basis of the dressed-state evolution that
// starts from |1> at t = 0:
//   psi(t) = -(Oc/W) e^{-i (g^2/W^2) w2 t} |E1>
//            + (g / sqrt(2) W) e^{-(i/2)(w1 + Oc^2 w2 / W^2) t}
//              (e^{-iWt}|E2> + e^{+iWt}|E3>)
Vector3 evolve_state(const EffectiveHamiltonian &h, double t);

struct DecayRates {
  double dark_rate;   // (g^2/W^2) gamma12
  double bright_rate; // (gamma3 + kappa/2 + Oc^2 gamma12 / W^2) / 2
};
DecayRates decay_rates(const EffectiveHamiltonian &h, double cavity_kappa);

} // namespace nonrecip
