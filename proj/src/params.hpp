#pragma once

#include <string>
#include <string_view>

namespace nonrecip {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

enum class Direction { co, counter };

// Two readings of the counter-propagating Doppler signs. `as_printed`
// keeps +kv in the single-photon detuning and +2kv in the two-photon
// detuning; `physical_text` carries -kv and -2kv instead. Both place the
// counter-propagation two-photon breakdown at the same |2(kv)^2| scale.
enum class SignConvention { as_printed, physical_text };

// Doppler offsets entering the susceptibility denominators, rad/s.
// single_photon adds to the probe detuning, two_photon to the ground-state
// coherence detuning.
struct DopplerShifts {
  double single_photon = 0.0;
  double two_photon = 0.0;
};

// Every physical input in canonical units (angular rad/s, m, m/s).
// Immutable by convention once validated; all operations take it by const
// reference and copy-modify for sweeps.
struct SystemParams {
  double g;            // cavity-emitter coupling Rabi frequency
  double omega_c_rabi; // control-field Rabi frequency
  double kappa1;       // probe input coupling
  double kappa2;       // probe output coupling
  double kappa_c;      // intrinsic cavity damping
  double gamma3;       // excited-state decay
  double gamma12;      // ground-state dephasing
  double delta_a;      // cavity-probe detuning
  double delta_p;      // probe-transition detuning
  double delta_c;      // control-transition detuning
  double wavelength;   // shared optical wavelength, m
  double refractive_index;
  double velocity; // tangential emitter speed, m/s
  SignConvention sign_convention;

  double kappa() const { return kappa1 + kappa2 + kappa_c; }
};

// Reference parameter set: kappa1 = 2pi x 0.5 MHz, kappa2 = 2pi x 4 MHz,
// kappa_c = 2pi x 6 MHz, gamma3 = 2pi x 14.3 MHz, gamma12 = 10.6e6 rad/s
// (literal, no 2pi -- the 2pi reading is selectable through the config),
// lambda = 637.2 nm, n = 1, v = 250 m/s, all detunings zero,
// g = kappa, Omega_c = 2pi x 500 MHz.
SystemParams default_params();

// Throws ValidationError naming the first violated field.
void validate(const SystemParams &p);

// 2*pi*n/lambda, rad/m. Throws ValidationError for lambda <= 0 or n < 1.
double wavenumber(double wavelength, double refractive_index);

DopplerShifts doppler_shifts(const SystemParams &p, Direction d);

// Flat JSON document -> validated record. Frequency-like keys are scaled by
// the mandatory "units" key ("two_pi_MHz" or "rad_per_s"); missing keys take
// the defaults above. Unknown keys, unknown unit tags and invariant
// violations throw ValidationError naming the key.
SystemParams parse_params(const std::string &json_text);
SystemParams parse_params_file(const std::string &path);

// Assign one field from its string form; `units` scales frequency keys.
void set_field(SystemParams &p, std::string_view key, std::string_view value,
               std::string_view units = "rad_per_s");
double get_field(const SystemParams &p, std::string_view key);

// Canonical rad/s echo with sorted keys; the fingerprint is FNV-1a 64 of
// this string, 16 hex chars.
std::string params_to_json(const SystemParams &p);
std::string params_fingerprint(const SystemParams &p);

std::string_view to_string(Direction d);
std::string_view to_string(SignConvention c);

} // namespace nonrecip
