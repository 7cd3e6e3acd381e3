#ifndef NONRECIP_H
#define NONRECIP_H

/*
 * nonrecip -- steady-state optical response of a moving three-level emitter
 * coupled to a driven cavity, with Doppler-split co-/counter-propagating
 * probe transmission, non-Hermitian eigenanalysis of the dressed system,
 * mean-field time integration, and parameter-sweep feature extraction.
 *
 * Conventions:
 *   - every rate, detuning and Rabi frequency is an angular frequency in
 *     rad/s; wavelengths are meters, velocities m/s;
 *   - the eigenanalysis basis order is (|1>, |3>, |2>): probe ground state,
 *     excited state, control ground state;
 *   - functions return NR_OK (0) on success; any other status leaves a
 *     human-readable message in nr_last_error() (thread local). Output
 *     parameters are not written on failure.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum nr_status {
  NR_OK = 0,
  NR_ERR_INVALID = 1,   /* null pointer or out-of-range argument */
  NR_ERR_CONFIG = 2,    /* configuration parse/validation failure */
  NR_ERR_NUMERICAL = 3, /* singular, divergent or unstable computation */
  NR_ERR_IO = 4         /* filesystem failure */
};

enum nr_direction { NR_CO = 0, NR_COUNTER = 1 };

typedef struct nr_params nr_params;         /* opaque parameter record */
typedef struct nr_sweep nr_sweep;           /* opaque 2-D sweep result */
typedef struct nr_trajectory nr_trajectory; /* opaque time trajectory */

typedef struct {
  double re, im;
} nr_complex;

/* Exact and approximate eigensystem of the effective 3x3 non-Hermitian
 * Hamiltonian. Entry order is (dark, bright_plus, bright_minus); vectors
 * are unit norm in the (|1>,|3>,|2>) basis. normalizers are the Euclidean
 * norms of the unnormalized approximate states; overlaps[i] is
 * |<approx_i|exact_i>|. */
typedef struct {
  nr_complex omega1, omega2; /* complex detunings (single-, two-photon) */
  double big_omega;          /* sqrt(g^2 + Omega_c^2) */
  nr_complex exact_values[3];
  nr_complex exact_vectors[3][3]; /* [state][component] */
  nr_complex approx_values[3];
  nr_complex approx_vectors[3][3];
  double normalizers[3];
  double overlaps[3];
  double dark_rate, bright_rate;
} nr_eigen_result;

typedef struct {
  double location;       /* refined extremum position */
  double extremum_value; /* refined extremum height/depth */
  double fwhm;           /* full width at half maximum; NaN if not measured */
  int valid;             /* 0 when the feature could not be located */
} nr_peak;

const char *nr_version(void);
const char *nr_last_error(void);
void nr_string_free(char *s);

/* ---- parameter records ------------------------------------------------ */

/* Default parameter set (see README for the values). */
int nr_params_create(nr_params **out);
/* Parse a flat JSON configuration document; frequency-like keys require a
 * "units" key of "two_pi_MHz" or "rad_per_s". */
int nr_params_parse(const char *json_text, nr_params **out);
int nr_params_load(const char *path, nr_params **out);
int nr_params_clone(const nr_params *p, nr_params **out);
void nr_params_free(nr_params *p);

/* Set one field. `value` is parsed as a number for numeric keys, or as an
 * enum string for "sign_convention". `units` applies to frequency keys and
 * may be NULL (meaning rad_per_s). */
int nr_params_set(nr_params *p, const char *key, const char *value,
                  const char *units);
int nr_params_get(const nr_params *p, const char *key, double *out);
/* Canonical rad/s echo of the record as a JSON object (sorted keys).
 * Free with nr_string_free. */
char *nr_params_to_json(const nr_params *p);
/* 16 hex characters + NUL. */
int nr_params_fingerprint(const nr_params *p, char buf[17]);

/* ---- geometry and closed-form steady state ----------------------------- */

int nr_wavenumber(const nr_params *p, double *out);
int nr_doppler_shifts(const nr_params *p, int direction, double *single_photon,
                      double *two_photon);

int nr_susceptibility(const nr_params *p, int direction, nr_complex *out);
int nr_cavity_amplitude(const nr_params *p, int direction, nr_complex *out);
int nr_transmittance(const nr_params *p, int direction, double *out);
int nr_empty_cavity_transmittance(const nr_params *p, double *out);
int nr_normalized_transmittance(const nr_params *p, int direction,
                                double *out);
int nr_contrast(const nr_params *p, double *out);

/* ---- non-Hermitian eigenanalysis --------------------------------------- */

int nr_eigensystem(const nr_params *p, int direction, nr_eigen_result *out);
/* Amplitudes of the dressed-basis evolution at time t, (|1>,|3>,|2>). */
int nr_evolve_state(const nr_params *p, int direction, double t,
                    nr_complex out_psi[3]);

/* ---- mean-field dynamics ------------------------------------------------ */

/* Steady state (a, sigma13, sigma12) of the linearized equations of motion
 * for a probe drive amplitude `probe`. When delta_a = delta_c = 0,
 * `closed_form_residual` (optional, may be NULL) receives the relative
 * difference between the solved cavity amplitude and the closed form. */
int nr_steady_state(const nr_params *p, int direction, nr_complex probe,
                    nr_complex out_state[3], double *closed_form_residual);

/* Fixed-step 4th-order integration from the zero state. Requires
 * dt * ||drift||_inf < 0.1. Rows are recorded every `output_stride` steps
 * (0 means 1); the final state is always recorded. */
int nr_integrate(const nr_params *p, int direction, nr_complex probe,
                 double t_end, double dt, size_t output_stride,
                 nr_trajectory **out);
size_t nr_trajectory_rows(const nr_trajectory *t);
int nr_trajectory_row(const nr_trajectory *t, size_t i, double *time,
                      nr_complex out_state[3]);
int nr_trajectory_write_csv(const nr_trajectory *t, const char *path);
void nr_trajectory_free(nr_trajectory *t);

/* ---- sweeps and feature extraction -------------------------------------- */

/* Transmittance over a probe-detuning grid; out_t and out_t_normalized are
 * caller buffers of length n (either may be NULL). */
int nr_spectrum(const nr_params *p, int direction, const double *delta_p,
                size_t n, double *out_t, double *out_t_normalized);

/* Pointwise (Omega_c, v) map of T+, T- and the contrast. Grids must be
 * strictly increasing. threads <= 0 picks a default. */
int nr_sweep2d(const nr_params *p, const double *omega_c, size_t n_omega_c,
               const double *v, size_t n_v, int threads, nr_sweep **out);
size_t nr_sweep_rows(const nr_sweep *s); /* velocity count   */
size_t nr_sweep_cols(const nr_sweep *s); /* Omega_c count    */
int nr_sweep_get(const nr_sweep *s, size_t row, size_t col, double *t_plus,
                 double *t_minus, double *eta);
int nr_sweep_write_csv(const nr_sweep *s, const char *path);
int nr_sweep_write_meta(const nr_sweep *s, const char *path);
void nr_sweep_free(nr_sweep *s);

/* Discrete extremum with 3-point parabolic refinement. find_minimum != 0
 * searches for a minimum. */
int nr_find_extremum(const double *x, const double *y, size_t n,
                     int find_minimum, nr_peak *out);
/* Peak height and width at half of the peak height, crossings linearly
 * interpolated. */
int nr_fwhm_of_peak(const double *x, const double *y, size_t n, nr_peak *out);

/* For each g, the FWHM over v of the contrast at the Omega_c slice taken
 * from `p`. out_v_fwhm[i] is NaN where no valid width exists; fails unless
 * at least 3 widths are valid. */
int nr_fwhm_vs_g_scan(const nr_params *p, const double *g, size_t n_g,
                      const double *v, size_t n_v, double *out_v_fwhm);

/* Least squares of ln y on ln x; all inputs must be positive. */
int nr_power_law_fit(const double *x, const double *y, size_t n,
                     double *exponent, double *prefactor, double *r_squared);

/* Shortest decimal representation that parses back to the same double.
 * Writes at most 31 chars + NUL. */
int nr_format_double(double value, char buf[32]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NONRECIP_H */
