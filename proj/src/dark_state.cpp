#include "dark_state.hpp"

#include "errors.hpp"
#include "io_util.hpp"

#include <algorithm>
#include <cmath>

namespace nonrecip {

namespace {

constexpr cplx i_unit{0.0, 1.0};

double vec_norm(const Vector3 &v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

Vector3 normalized(const Vector3 &v) {
  const double n = vec_norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vector3 matvec(const Matrix3 &m, const Vector3 &v) {
  Vector3 out{};
  for (int i = 0; i < 3; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

double matrix_scale(const Matrix3 &m) {
  double s = 0.0;
  for (const auto &row : m)
    for (const auto &e : row)
      s = std::max(s, std::abs(e));
  return s;
}

// |<a|b>| with the conjugated inner product.
double overlap(const Vector3 &a, const Vector3 &b) {
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i)
    s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

// Roots of z^3 + a2 z^2 + a1 z + a0 over the complex numbers
// (Cardano on the depressed cubic, branch chosen for stability).
std::array<cplx, 3> cubic_roots(cplx a2, cplx a1, cplx a0) {
  const cplx shift = a2 / 3.0;
  const cplx p = a1 - a2 * a2 / 3.0;
  const cplx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

  const cplx omega{-0.5, std::sqrt(3.0) / 2.0}; // primitive cube root of 1
  std::array<cplx, 3> w;

  const cplx disc = q * q / 4.0 + p * p * p / 27.0;
  const cplx s = std::sqrt(disc);
  cplx u3 = -q / 2.0 + s;
  if (std::abs(-q / 2.0 - s) > std::abs(u3))
    u3 = -q / 2.0 - s;

  if (u3 == cplx{0.0, 0.0}) {
    // p and q both ~0: triple root of the depressed cubic at 0.
    const cplx r = std::pow(-q, 1.0 / 3.0);
    for (int k = 0; k < 3; ++k)
      w[k] = r * std::pow(omega, k);
  } else {
    const cplx u = std::pow(u3, 1.0 / 3.0);
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
      w[k] = uk - p / (3.0 * uk);
      uk *= omega;
    }
  }

  std::array<cplx, 3> roots;
  for (int k = 0; k < 3; ++k) {
    cplx z = w[k] - shift;
    // one Newton step on the undepressed cubic
    const cplx f = ((z + a2) * z + a1) * z + a0;
    const cplx df = (3.0 * z + 2.0 * a2) * z + a1;
    if (df != cplx{0.0, 0.0})
      z -= f / df;
    roots[k] = z;
  }
  return roots;
}

// Right null vector of a rank-deficient 3x3 matrix via the cross products
// of its rows (bilinear, no conjugation). Falls back to a vector orthogonal
// to the largest row when the null space has dimension >= 2; `which`
// disambiguates repeated eigenvalues so degenerate spaces still yield
// distinct vectors.
Vector3 null_vector(const Matrix3 &m, double scale, int which) {
  auto cross = [](const std::array<cplx, 3> &a, const std::array<cplx, 3> &b) {
    return Vector3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
  };
  const Vector3 candidates[3] = {cross(m[0], m[1]), cross(m[1], m[2]),
                                 cross(m[2], m[0])};
  int best = 0;
  double best_norm = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double n = vec_norm(candidates[k]);
    if (n > best_norm) {
      best_norm = n;
      best = k;
    }
  }
  if (best_norm > 1e-14 * scale * scale)
    return normalized(candidates[best]);

  // Rank <= 1: null space is (at least) the plane bilinear-orthogonal to the
  // largest row, or all of C^3 for the zero matrix.
  int ri = 0, rj = 0;
  double rmax = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(m[i][j]) > rmax) {
        rmax = std::abs(m[i][j]);
        ri = i;
        rj = j;
      }
  if (rmax <= 1e-300) {
    Vector3 v{0.0, 0.0, 0.0};
    v[which % 3] = 1.0;
    return v;
  }
  const auto &row = m[ri];
  Vector3 v{0.0, 0.0, 0.0};
  const int other = (rj + 1 + which) % 3 == rj ? (rj + 2) % 3
                                               : (rj + 1 + which) % 3;
  v[other] = 1.0;
  v[rj] = -row[other] / row[rj];
  return normalized(v);
}

} // namespace

std::string_view to_string(StateLabel s) {
  switch (s) {
  case StateLabel::dark:
    return "dark";
  case StateLabel::bright_plus:
    return "bright_plus";
  default:
    return "bright_minus";
  }
}

Eigen3 eigen3x3(const Matrix3 &m) {
  for (const auto &row : m)
    for (const auto &e : row)
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
        throw ValidationError("eigen3x3: non-finite matrix entry");

  // characteristic polynomial lambda^3 - tr lambda^2 + c2 lambda - det
  const cplx tr = m[0][0] + m[1][1] + m[2][2];
  const cplx c2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                  m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const cplx det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);

  Eigen3 out;
  out.values = cubic_roots(-tr, c2, -det);

  const double scale = std::max(matrix_scale(m), 1e-300);
  out.max_residual = 0.0;
  for (int k = 0; k < 3; ++k) {
    Matrix3 shifted = m;
    for (int i = 0; i < 3; ++i)
      shifted[i][i] -= out.values[k];
    out.vectors[k] = null_vector(shifted, scale, k);
    const Vector3 r = matvec(m, out.vectors[k]);
    Vector3 resid;
    for (int i = 0; i < 3; ++i)
      resid[i] = r[i] - out.values[k] * out.vectors[k][i];
    out.max_residual = std::max(out.max_residual, vec_norm(resid));
  }
  return out;
}

EffectiveHamiltonian build_effective_hamiltonian(const SystemParams &p,
                                                 Direction d) {
  validate(p);
  const DopplerShifts s = doppler_shifts(p, d);
  const double delta = p.delta_p + s.single_photon;
  const double big_delta = p.delta_p + s.two_photon;

  EffectiveHamiltonian h;
  h.omega1 = cplx{delta, -p.gamma3};
  h.omega2 = cplx{big_delta, -p.gamma12};
  h.big_omega = std::hypot(p.g, p.omega_c_rabi);
  h.matrix = Matrix3{{{cplx{0.0}, cplx{p.g}, cplx{0.0}},
                      {cplx{p.g}, h.omega1, cplx{p.omega_c_rabi}},
                      {cplx{0.0}, cplx{p.omega_c_rabi}, h.omega2}}};
  return h;
}

EigenSet approximate_eigenstates(const EffectiveHamiltonian &h) {
  const double g = h.g();
  const double oc = h.omega_c();
  const double W = h.big_omega;
  const cplx w1 = h.omega1;
  const cplx w2 = h.omega2;

  const Vector3 raw[3] = {
      {w1 * w2 - oc * oc, -g * w2, g * oc},
      {(W - w1) * (W - w2) - oc * oc, g * (W - w2), g * oc},
      {(W + w1) * (W + w2) - oc * oc, -g * (W + w2), g * oc},
  };

  EigenSet set;
  set.labels = {StateLabel::dark, StateLabel::bright_plus,
                StateLabel::bright_minus};
  for (int k = 0; k < 3; ++k) {
    const double n = vec_norm(raw[k]);
    if (n == 0.0)
      throw NumericalError("approximate_eigenstates: normalizer N" +
                           std::to_string(k + 1) +
                           " vanishes (degenerate input)");
    set.normalizers[k] = n;
    set.vectors[k] = {raw[k][0] / n, raw[k][1] / n, raw[k][2] / n};
  }

  if (W == 0.0)
    throw NumericalError(
        "approximate_eigenstates: g = Omega_c = 0 leaves the dressed "
        "splitting undefined");
  const cplx shift = 0.5 * (w1 + (oc * oc / (W * W)) * w2);
  set.values[0] = (g * g / (W * W)) * w2;
  set.values[1] = W + shift;
  set.values[2] = -W + shift;
  return set;
}

EigenSet exact_eigendecompose(const EffectiveHamiltonian &h) {
  const Eigen3 raw = eigen3x3(h.matrix);

  const double scale = std::max(matrix_scale(h.matrix), 1e-300);
  if (raw.max_residual > 1e-6 * scale)
    throw NumericalError(
        "exact_eigendecompose: eigenpair residual " +
        format_double(raw.max_residual) + " exceeds tolerance " +
        format_double(1e-6 * scale) + " (defective or near-defective input)");

  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  int order[3] = {0, 1, 2};
  try {
    // Assign labels by the permutation with maximal total overlap against
    // the approximate states.
    const EigenSet approx = approximate_eigenstates(h);
    double ov[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        ov[i][j] = overlap(approx.vectors[i], raw.vectors[j]);
    int best = 0;
    double best_sum = -1.0;
    for (int k = 0; k < 6; ++k) {
      const double sum =
          ov[0][perms[k][0]] + ov[1][perms[k][1]] + ov[2][perms[k][2]];
      if (sum > best_sum) {
        best_sum = sum;
        best = k;
      }
    }
    for (int i = 0; i < 3; ++i)
      order[i] = perms[best][i];
  } catch (const NumericalError &) {
    // Degenerate couplings leave the approximate states undefined; label the
    // largest-|<1|E>| vector dark and order the bright pair by Re(lambda).
    int dark = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(raw.vectors[j][0]) > std::abs(raw.vectors[dark][0]))
        dark = j;
    int rest[2], n = 0;
    for (int j = 0; j < 3; ++j)
      if (j != dark)
        rest[n++] = j;
    if (raw.values[rest[0]].real() < raw.values[rest[1]].real())
      std::swap(rest[0], rest[1]);
    order[0] = dark;
    order[1] = rest[0];
    order[2] = rest[1];
  }

  EigenSet set;
  set.labels = {StateLabel::dark, StateLabel::bright_plus,
                StateLabel::bright_minus};
  set.normalizers = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    set.values[i] = raw.values[order[i]];
    set.vectors[i] = raw.vectors[order[i]];
  }
  return set;
}

Vector3 evolve_state(const EffectiveHamiltonian &h, double t) {
  if (t < 0.0)
    throw ValidationError("evolve_state: t must be >= 0");
  const EigenSet approx = approximate_eigenstates(h);
  const double g = h.g();
  const double oc = h.omega_c();
  const double W = h.big_omega;
  const cplx w2 = h.omega2;
  const cplx shift = h.omega1 + (oc * oc / (W * W)) * w2;

  const cplx c_dark =
      -(oc / W) * std::exp(-i_unit * (g * g / (W * W)) * w2 * t);
  const cplx c_bright = g / (std::sqrt(2.0) * W) *
                        std::exp(-0.5 * i_unit * shift * t);
  const cplx phase_plus = std::exp(-i_unit * cplx{W, 0.0} * t);
  const cplx phase_minus = std::exp(i_unit * cplx{W, 0.0} * t);

  Vector3 psi{};
  for (int i = 0; i < 3; ++i)
    psi[i] = c_dark * approx.vectors[0][i] +
             c_bright * (phase_plus * approx.vectors[1][i] +
                         phase_minus * approx.vectors[2][i]);
  return psi;
}

DecayRates decay_rates(const EffectiveHamiltonian &h, double cavity_kappa) {
  const double g = h.g();
  const double oc = h.omega_c();
  const double W2 = h.big_omega * h.big_omega;
  if (W2 == 0.0)
    throw NumericalError("decay_rates: g = Omega_c = 0");
  DecayRates r;
  r.dark_rate = (g * g / W2) * h.gamma12();
  r.bright_rate =
      0.5 * (h.gamma3() + 0.5 * cavity_kappa + oc * oc * h.gamma12() / W2);
  return r;
}

} // namespace nonrecip
