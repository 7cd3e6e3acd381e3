#include "nonrecip.h"

#include "analysis.hpp"
#include "dark_state.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "io_util.hpp"
#include "params.hpp"
#include "steady_state.hpp"

#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

using namespace nonrecip;

struct nr_params {
  SystemParams p;
};

struct nr_sweep {
  SweepResult result;
  SystemParams templ;
};

struct nr_trajectory {
  std::vector<MeanFieldState> rows;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const std::string &msg) {
  g_last_error = msg;
  return status;
}

// Maps the core exception taxonomy onto C statuses.
template <typename Fn> int guarded(Fn &&fn) {
  try {
    fn();
    return NR_OK;
  } catch (const ValidationError &e) {
    return fail(NR_ERR_CONFIG, e.what());
  } catch (const ContractError &e) {
    return fail(NR_ERR_CONFIG, e.what());
  } catch (const NumericalError &e) {
    return fail(NR_ERR_NUMERICAL, e.what());
  } catch (const IoError &e) {
    return fail(NR_ERR_IO, e.what());
  } catch (const std::bad_alloc &) {
    return fail(NR_ERR_NUMERICAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(NR_ERR_NUMERICAL, e.what());
  }
}

bool direction_ok(int d) { return d == NR_CO || d == NR_COUNTER; }

Direction to_direction(int d) {
  return d == NR_CO ? Direction::co : Direction::counter;
}

nr_complex wrap(const cplx &z) { return {z.real(), z.imag()}; }

} // namespace

extern "C" {

const char *nr_version(void) { return "1.0.0"; }

const char *nr_last_error(void) { return g_last_error.c_str(); }

void nr_string_free(char *s) { delete[] s; }

int nr_params_create(nr_params **out) {
  if (out == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_create: out is null");
  return guarded([&] { *out = new nr_params{default_params()}; });
}

int nr_params_parse(const char *json_text, nr_params **out) {
  if (json_text == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_parse: null argument");
  return guarded([&] { *out = new nr_params{parse_params(json_text)}; });
}

int nr_params_load(const char *path, nr_params **out) {
  if (path == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_load: null argument");
  return guarded([&] { *out = new nr_params{parse_params_file(path)}; });
}

int nr_params_clone(const nr_params *p, nr_params **out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_clone: null argument");
  return guarded([&] { *out = new nr_params{p->p}; });
}

void nr_params_free(nr_params *p) { delete p; }

int nr_params_set(nr_params *p, const char *key, const char *value,
                  const char *units) {
  if (p == nullptr || key == nullptr || value == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_set: null argument");
  return guarded([&] {
    set_field(p->p, key, value, units == nullptr ? "rad_per_s" : units);
  });
}

int nr_params_get(const nr_params *p, const char *key, double *out) {
  if (p == nullptr || key == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_get: null argument");
  return guarded([&] { *out = get_field(p->p, key); });
}

char *nr_params_to_json(const nr_params *p) {
  if (p == nullptr)
    return nullptr;
  try {
    const std::string s = params_to_json(p->p);
    char *buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
  } catch (...) {
    return nullptr;
  }
}

int nr_params_fingerprint(const nr_params *p, char buf[17]) {
  if (p == nullptr || buf == nullptr)
    return fail(NR_ERR_INVALID, "nr_params_fingerprint: null argument");
  return guarded([&] {
    const std::string s = params_fingerprint(p->p);
    std::memcpy(buf, s.c_str(), 17);
  });
}

/* ---- geometry / closed form ---- */

int nr_wavenumber(const nr_params *p, double *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_wavenumber: null argument");
  return guarded(
      [&] { *out = wavenumber(p->p.wavelength, p->p.refractive_index); });
}

int nr_doppler_shifts(const nr_params *p, int direction, double *single_photon,
                      double *two_photon) {
  if (p == nullptr || single_photon == nullptr || two_photon == nullptr)
    return fail(NR_ERR_INVALID, "nr_doppler_shifts: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_doppler_shifts: bad direction");
  return guarded([&] {
    const DopplerShifts s = doppler_shifts(p->p, to_direction(direction));
    *single_photon = s.single_photon;
    *two_photon = s.two_photon;
  });
}

int nr_susceptibility(const nr_params *p, int direction, nr_complex *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_susceptibility: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_susceptibility: bad direction");
  return guarded(
      [&] { *out = wrap(susceptibility(p->p, to_direction(direction))); });
}

int nr_cavity_amplitude(const nr_params *p, int direction, nr_complex *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_cavity_amplitude: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_cavity_amplitude: bad direction");
  return guarded(
      [&] { *out = wrap(cavity_amplitude(p->p, to_direction(direction))); });
}

int nr_transmittance(const nr_params *p, int direction, double *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_transmittance: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_transmittance: bad direction");
  return guarded(
      [&] { *out = transmittance(p->p, to_direction(direction)); });
}

int nr_empty_cavity_transmittance(const nr_params *p, double *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_empty_cavity_transmittance: null argument");
  return guarded([&] { *out = empty_cavity_transmittance(p->p); });
}

int nr_normalized_transmittance(const nr_params *p, int direction,
                                double *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_normalized_transmittance: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_normalized_transmittance: bad direction");
  return guarded(
      [&] { *out = normalized_transmittance(p->p, to_direction(direction)); });
}

int nr_contrast(const nr_params *p, double *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_contrast: null argument");
  return guarded([&] { *out = contrast(p->p); });
}

/* ---- eigenanalysis ---- */

int nr_eigensystem(const nr_params *p, int direction, nr_eigen_result *out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_eigensystem: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_eigensystem: bad direction");
  return guarded([&] {
    const EffectiveHamiltonian h =
        build_effective_hamiltonian(p->p, to_direction(direction));
    const EigenSet exact = exact_eigendecompose(h);
    const EigenSet approx = approximate_eigenstates(h);

    nr_eigen_result r{};
    r.omega1 = wrap(h.omega1);
    r.omega2 = wrap(h.omega2);
    r.big_omega = h.big_omega;
    for (int i = 0; i < 3; ++i) {
      r.exact_values[i] = wrap(exact.values[i]);
      r.approx_values[i] = wrap(approx.values[i]);
      r.normalizers[i] = approx.normalizers[i];
      cplx ov = 0.0;
      for (int j = 0; j < 3; ++j) {
        r.exact_vectors[i][j] = wrap(exact.vectors[i][j]);
        r.approx_vectors[i][j] = wrap(approx.vectors[i][j]);
        ov += std::conj(approx.vectors[i][j]) * exact.vectors[i][j];
      }
      r.overlaps[i] = std::abs(ov);
    }
    const DecayRates rates = decay_rates(h, p->p.kappa());
    r.dark_rate = rates.dark_rate;
    r.bright_rate = rates.bright_rate;
    *out = r;
  });
}

int nr_evolve_state(const nr_params *p, int direction, double t,
                    nr_complex out_psi[3]) {
  if (p == nullptr || out_psi == nullptr)
    return fail(NR_ERR_INVALID, "nr_evolve_state: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_evolve_state: bad direction");
  return guarded([&] {
    const EffectiveHamiltonian h =
        build_effective_hamiltonian(p->p, to_direction(direction));
    const Vector3 psi = evolve_state(h, t);
    for (int i = 0; i < 3; ++i)
      out_psi[i] = wrap(psi[i]);
  });
}

/* ---- dynamics ---- */

int nr_steady_state(const nr_params *p, int direction, nr_complex probe,
                    nr_complex out_state[3], double *closed_form_residual) {
  if (p == nullptr || out_state == nullptr)
    return fail(NR_ERR_INVALID, "nr_steady_state: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_steady_state: bad direction");
  return guarded([&] {
    const Direction d = to_direction(direction);
    const LinearSystem sys =
        build_linear_system(p->p, d, cplx{probe.re, probe.im});
    const MeanFieldState s = solve_steady(sys);
    out_state[0] = wrap(s.a);
    out_state[1] = wrap(s.sigma13);
    out_state[2] = wrap(s.sigma12);
    if (closed_form_residual != nullptr) {
      if (p->p.delta_a == 0.0 && p->p.delta_c == 0.0) {
        const cplx reference =
            cavity_amplitude(p->p, d) * cplx{probe.re, probe.im};
        *closed_form_residual =
            std::abs(s.a - reference) /
            std::max(std::abs(reference),
                     std::numeric_limits<double>::min());
      } else {
        *closed_form_residual = std::numeric_limits<double>::quiet_NaN();
      }
    }
  });
}

int nr_integrate(const nr_params *p, int direction, nr_complex probe,
                 double t_end, double dt, size_t output_stride,
                 nr_trajectory **out) {
  if (p == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_integrate: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_integrate: bad direction");
  return guarded([&] {
    const LinearSystem sys = build_linear_system(p->p, to_direction(direction),
                                                 cplx{probe.re, probe.im});
    *out = new nr_trajectory{integrate(sys, t_end, dt, output_stride)};
  });
}

size_t nr_trajectory_rows(const nr_trajectory *t) {
  return t == nullptr ? 0 : t->rows.size();
}

int nr_trajectory_row(const nr_trajectory *t, size_t i, double *time,
                      nr_complex out_state[3]) {
  if (t == nullptr || time == nullptr || out_state == nullptr)
    return fail(NR_ERR_INVALID, "nr_trajectory_row: null argument");
  if (i >= t->rows.size())
    return fail(NR_ERR_INVALID, "nr_trajectory_row: index out of range");
  const MeanFieldState &s = t->rows[i];
  *time = s.t;
  out_state[0] = wrap(s.a);
  out_state[1] = wrap(s.sigma13);
  out_state[2] = wrap(s.sigma12);
  return NR_OK;
}

int nr_trajectory_write_csv(const nr_trajectory *t, const char *path) {
  if (t == nullptr || path == nullptr)
    return fail(NR_ERR_INVALID, "nr_trajectory_write_csv: null argument");
  return guarded([&] {
    std::string csv = "t,re_a,im_a,re_s13,im_s13,re_s12,im_s12\n";
    for (const MeanFieldState &s : t->rows) {
      csv += format_double(s.t);
      csv += ',';
      csv += csv_complex(s.a);
      csv += ',';
      csv += csv_complex(s.sigma13);
      csv += ',';
      csv += csv_complex(s.sigma12);
      csv += '\n';
    }
    atomic_write_file(path, csv);
  });
}

void nr_trajectory_free(nr_trajectory *t) { delete t; }

/* ---- sweeps and features ---- */

int nr_spectrum(const nr_params *p, int direction, const double *delta_p,
                size_t n, double *out_t, double *out_t_normalized) {
  if (p == nullptr || delta_p == nullptr)
    return fail(NR_ERR_INVALID, "nr_spectrum: null argument");
  if (!direction_ok(direction))
    return fail(NR_ERR_INVALID, "nr_spectrum: bad direction");
  if (n == 0)
    return fail(NR_ERR_INVALID, "nr_spectrum: empty grid");
  return guarded([&] {
    SystemParams q = p->p;
    validate(q);
    const Direction d = to_direction(direction);
    for (size_t i = 0; i < n; ++i) {
      q.delta_p = delta_p[i];
      const double t = transmittance(q, d);
      if (out_t != nullptr)
        out_t[i] = t;
      if (out_t_normalized != nullptr)
        out_t_normalized[i] = t / empty_cavity_transmittance(q);
    }
  });
}

int nr_sweep2d(const nr_params *p, const double *omega_c, size_t n_omega_c,
               const double *v, size_t n_v, int threads, nr_sweep **out) {
  if (p == nullptr || omega_c == nullptr || v == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_sweep2d: null argument");
  return guarded([&] {
    const Grid1D oc = make_grid(
        "omega_c", std::vector<double>(omega_c, omega_c + n_omega_c));
    const Grid1D vg = make_grid("v", std::vector<double>(v, v + n_v));
    *out = new nr_sweep{sweep2d(p->p, oc, vg, threads), p->p};
  });
}

size_t nr_sweep_rows(const nr_sweep *s) {
  return s == nullptr ? 0 : s->result.rows();
}

size_t nr_sweep_cols(const nr_sweep *s) {
  return s == nullptr ? 0 : s->result.cols();
}

int nr_sweep_get(const nr_sweep *s, size_t row, size_t col, double *t_plus,
                 double *t_minus, double *eta) {
  if (s == nullptr)
    return fail(NR_ERR_INVALID, "nr_sweep_get: null argument");
  if (row >= s->result.rows() || col >= s->result.cols())
    return fail(NR_ERR_INVALID, "nr_sweep_get: index out of range");
  const size_t k = s->result.index(row, col);
  if (t_plus != nullptr)
    *t_plus = s->result.t_plus[k];
  if (t_minus != nullptr)
    *t_minus = s->result.t_minus[k];
  if (eta != nullptr)
    *eta = s->result.eta[k];
  return NR_OK;
}

int nr_sweep_write_csv(const nr_sweep *s, const char *path) {
  if (s == nullptr || path == nullptr)
    return fail(NR_ERR_INVALID, "nr_sweep_write_csv: null argument");
  return guarded([&] {
    std::string csv = "omega_c,v,t_plus,t_minus,eta\n";
    const SweepResult &r = s->result;
    for (size_t row = 0; row < r.rows(); ++row) {
      for (size_t col = 0; col < r.cols(); ++col) {
        const size_t k = r.index(row, col);
        csv += format_double(r.omega_c_axis.values[col]);
        csv += ',';
        csv += format_double(r.v_axis.values[row]);
        csv += ',';
        csv += format_double(r.t_plus[k]);
        csv += ',';
        csv += format_double(r.t_minus[k]);
        csv += ',';
        csv += format_double(r.eta[k]);
        csv += '\n';
      }
    }
    atomic_write_file(path, csv);
  });
}

int nr_sweep_write_meta(const nr_sweep *s, const char *path) {
  if (s == nullptr || path == nullptr)
    return fail(NR_ERR_INVALID, "nr_sweep_write_meta: null argument");
  return guarded([&] { atomic_write_file(path, sweep_meta_json(s->result, s->templ)); });
}

void nr_sweep_free(nr_sweep *s) { delete s; }

int nr_find_extremum(const double *x, const double *y, size_t n,
                     int find_minimum, nr_peak *out) {
  if (x == nullptr || y == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_find_extremum: null argument");
  return guarded([&] {
    const PeakFeature f = find_extremum(
        std::span<const double>(x, n), std::span<const double>(y, n),
        find_minimum != 0 ? ExtremumMode::minimum : ExtremumMode::maximum);
    *out = {f.location, f.extremum_value, f.fwhm, f.valid ? 1 : 0};
    if (!f.valid)
      g_last_error = f.diagnostic;
  });
}

int nr_fwhm_of_peak(const double *x, const double *y, size_t n, nr_peak *out) {
  if (x == nullptr || y == nullptr || out == nullptr)
    return fail(NR_ERR_INVALID, "nr_fwhm_of_peak: null argument");
  return guarded([&] {
    const PeakFeature f = fwhm_of_peak(std::span<const double>(x, n),
                                       std::span<const double>(y, n));
    *out = {f.location, f.extremum_value, f.fwhm, f.valid ? 1 : 0};
    if (!f.valid)
      g_last_error = f.diagnostic;
  });
}

int nr_fwhm_vs_g_scan(const nr_params *p, const double *g, size_t n_g,
                      const double *v, size_t n_v, double *out_v_fwhm) {
  if (p == nullptr || g == nullptr || v == nullptr || out_v_fwhm == nullptr)
    return fail(NR_ERR_INVALID, "nr_fwhm_vs_g_scan: null argument");
  return guarded([&] {
    const Grid1D gg = make_grid("g", std::vector<double>(g, g + n_g));
    const Grid1D vg = make_grid("v", std::vector<double>(v, v + n_v));
    const auto pts = fwhm_vs_g_scan(p->p, gg, vg);
    for (size_t i = 0; i < pts.size(); ++i)
      out_v_fwhm[i] = pts[i].valid
                          ? pts[i].v_fwhm
                          : std::numeric_limits<double>::quiet_NaN();
  });
}

int nr_power_law_fit(const double *x, const double *y, size_t n,
                     double *exponent, double *prefactor, double *r_squared) {
  if (x == nullptr || y == nullptr)
    return fail(NR_ERR_INVALID, "nr_power_law_fit: null argument");
  return guarded([&] {
    const PowerLawFit fit = power_law_fit(std::span<const double>(x, n),
                                          std::span<const double>(y, n));
    if (exponent != nullptr)
      *exponent = fit.exponent;
    if (prefactor != nullptr)
      *prefactor = fit.prefactor;
    if (r_squared != nullptr)
      *r_squared = fit.r_squared;
  });
}

int nr_format_double(double value, char buf[32]) {
  if (buf == nullptr)
    return fail(NR_ERR_INVALID, "nr_format_double: null buffer");
  return guarded([&] {
    const std::string s = format_double(value);
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

} /* extern "C" */
