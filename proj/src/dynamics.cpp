#include "dynamics.hpp"

#include "errors.hpp"

#include <cmath>
#include <string>

namespace nonrecip {

namespace {

constexpr cplx i_unit{0.0, 1.0};

using Vec3 = std::array<cplx, 3>;

Vec3 apply(const LinearSystem &sys, const Vec3 &x) {
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = sys.drift[i][0] * x[0] + sys.drift[i][1] * x[1] +
             sys.drift[i][2] * x[2] + sys.drive[i];
  return out;
}

bool finite(const Vec3 &x) {
  for (const auto &c : x)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      return false;
  return true;
}

} // namespace

double LinearSystem::inf_norm() const {
  double best = 0.0;
  for (const auto &row : drift) {
    double s = 0.0;
    for (const auto &e : row)
      s += std::abs(e);
    best = std::max(best, s);
  }
  return best;
}

LinearSystem build_linear_system(const SystemParams &p, Direction d,
                                 cplx probe_amplitude) {
  validate(p);
  const DopplerShifts s = doppler_shifts(p, d);
  const double g = p.g;
  const double oc = p.omega_c_rabi;

  LinearSystem sys;
  sys.drift = {{{-(i_unit * (p.delta_a + p.delta_p) + 0.5 * p.kappa()),
                 -i_unit * g, cplx{0.0}},
                {-i_unit * g,
                 -(p.gamma3 + i_unit * (p.delta_p + s.single_photon)),
                 -i_unit * oc},
                {cplx{0.0}, -i_unit * oc,
                 -(p.gamma12 +
                   i_unit * (p.delta_p - p.delta_c + s.two_photon))}}};
  sys.drive = {std::sqrt(p.kappa1) * probe_amplitude, cplx{0.0}, cplx{0.0}};
  return sys;
}

std::vector<MeanFieldState> integrate(const LinearSystem &sys, double t_end,
                                      double dt, std::size_t output_stride) {
  if (!(t_end > 0.0))
    throw ValidationError("integrate: t_end must be > 0");
  if (!(dt > 0.0))
    throw ValidationError("integrate: dt must be > 0");
  const double stiffness = dt * sys.inf_norm();
  if (!(stiffness < 0.1))
    throw NumericalError(
        "integrate: dt * ||drift|| = " + std::to_string(stiffness) +
        " violates the stability guard (< 0.1); reduce dt");
  if (output_stride == 0)
    output_stride = 1;

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  std::vector<MeanFieldState> trajectory;
  trajectory.reserve(steps / output_stride + 2);

  Vec3 x{cplx{0.0}, cplx{0.0}, cplx{0.0}};
  auto record = [&](double t) {
    trajectory.push_back({x[0], x[1], x[2], t});
  };
  record(0.0);

  for (std::size_t n = 0; n < steps; ++n) {
    const Vec3 k1 = apply(sys, x);
    Vec3 tmp;
    for (int i = 0; i < 3; ++i)
      tmp[i] = x[i] + 0.5 * dt * k1[i];
    const Vec3 k2 = apply(sys, tmp);
    for (int i = 0; i < 3; ++i)
      tmp[i] = x[i] + 0.5 * dt * k2[i];
    const Vec3 k3 = apply(sys, tmp);
    for (int i = 0; i < 3; ++i)
      tmp[i] = x[i] + dt * k3[i];
    const Vec3 k4 = apply(sys, tmp);
    for (int i = 0; i < 3; ++i)
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (!finite(x))
      throw NumericalError("integrate: state diverged at step " +
                           std::to_string(n + 1));
    if ((n + 1) % output_stride == 0 || n + 1 == steps)
      record(static_cast<double>(n + 1) * dt);
  }
  return trajectory;
}

MeanFieldState solve_steady(const LinearSystem &sys) {
  // Gaussian elimination with partial pivoting on the 3x3 system
  // drift x = -drive.
  cplx a[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      a[i][j] = sys.drift[i][j];
    a[i][3] = -sys.drive[i];
  }

  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      scale = std::max(scale, std::abs(a[i][j]));

  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
        pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-300 ||
        std::abs(a[pivot][col]) < 1e-15 * scale)
      throw NumericalError(
          "solve_steady: drift matrix is singular (no damping?)");
    if (pivot != col)
      for (int j = col; j < 4; ++j)
        std::swap(a[pivot][j], a[col][j]);
    for (int r = col + 1; r < 3; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j)
        a[r][j] -= f * a[col][j];
    }
  }

  Vec3 x;
  for (int i = 2; i >= 0; --i) {
    cplx s = a[i][3];
    for (int j = i + 1; j < 3; ++j)
      s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return {x[0], x[1], x[2], 0.0};
}

} // namespace nonrecip
