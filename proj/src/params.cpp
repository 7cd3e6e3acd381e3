#include "params.hpp"

#include "errors.hpp"
#include "io_util.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nonrecip {

namespace {

constexpr std::array<std::string_view, 10> frequency_keys = {
    "g",      "omega_c_rabi", "kappa1",  "kappa2",  "kappa_c",
    "gamma3", "gamma12",      "delta_a", "delta_p", "delta_c"};

constexpr std::array<std::string_view, 3> plain_keys = {
    "wavelength", "refractive_index", "velocity"};

bool is_frequency_key(std::string_view key) {
  for (auto k : frequency_keys)
    if (k == key)
      return true;
  return false;
}

double *field_slot(SystemParams &p, std::string_view key) {
  if (key == "g")
    return &p.g;
  if (key == "omega_c_rabi")
    return &p.omega_c_rabi;
  if (key == "kappa1")
    return &p.kappa1;
  if (key == "kappa2")
    return &p.kappa2;
  if (key == "kappa_c")
    return &p.kappa_c;
  if (key == "gamma3")
    return &p.gamma3;
  if (key == "gamma12")
    return &p.gamma12;
  if (key == "delta_a")
    return &p.delta_a;
  if (key == "delta_p")
    return &p.delta_p;
  if (key == "delta_c")
    return &p.delta_c;
  if (key == "wavelength")
    return &p.wavelength;
  if (key == "refractive_index")
    return &p.refractive_index;
  if (key == "velocity")
    return &p.velocity;
  return nullptr;
}

double unit_factor(std::string_view units) {
  if (units == "rad_per_s")
    return 1.0;
  if (units == "two_pi_MHz")
    return two_pi * 1.0e6;
  throw ValidationError("unknown unit tag '" + std::string(units) +
                        "' (expected \"two_pi_MHz\" or \"rad_per_s\")");
}

SignConvention parse_convention(std::string_view s) {
  if (s == "as_printed")
    return SignConvention::as_printed;
  if (s == "physical_text")
    return SignConvention::physical_text;
  throw ValidationError("sign_convention: unknown value '" + std::string(s) +
                        "' (expected \"as_printed\" or \"physical_text\")");
}

} // namespace

SystemParams default_params() {
  SystemParams p{};
  p.kappa1 = two_pi * 0.5e6;
  p.kappa2 = two_pi * 4.0e6;
  p.kappa_c = two_pi * 6.0e6;
  p.gamma3 = two_pi * 14.3e6;
  p.gamma12 = 10.6e6;
  p.delta_a = 0.0;
  p.delta_p = 0.0;
  p.delta_c = 0.0;
  p.wavelength = 637.2e-9;
  p.refractive_index = 1.0;
  p.velocity = 250.0;
  p.sign_convention = SignConvention::as_printed;
  p.g = p.kappa(); // 2pi x 10.5 MHz
  p.omega_c_rabi = two_pi * 500.0e6;
  return p;
}

void validate(const SystemParams &p) {
  auto require = [](bool ok, const char *msg) {
    if (!ok)
      throw ValidationError(msg);
  };
  require(std::isfinite(p.g), "g: not finite");
  require(std::isfinite(p.omega_c_rabi), "omega_c_rabi: not finite");
  require(std::isfinite(p.delta_a), "delta_a: not finite");
  require(std::isfinite(p.delta_p), "delta_p: not finite");
  require(std::isfinite(p.delta_c), "delta_c: not finite");
  require(std::isfinite(p.kappa1) && p.kappa1 >= 0.0,
          "kappa1: must be >= 0 and finite");
  require(std::isfinite(p.kappa2) && p.kappa2 >= 0.0,
          "kappa2: must be >= 0 and finite");
  require(std::isfinite(p.kappa_c) && p.kappa_c >= 0.0,
          "kappa_c: must be >= 0 and finite");
  require(std::isfinite(p.gamma3) && p.gamma3 >= 0.0,
          "gamma3: must be >= 0 and finite");
  require(std::isfinite(p.gamma12) && p.gamma12 >= 0.0,
          "gamma12: must be >= 0 and finite");
  require(std::isfinite(p.wavelength) && p.wavelength > 0.0,
          "wavelength: must be > 0");
  require(std::isfinite(p.refractive_index) && p.refractive_index >= 1.0,
          "refractive_index: must be >= 1");
  require(std::isfinite(p.velocity) && p.velocity >= 0.0,
          "velocity: must be >= 0");
  require(p.kappa() > 0.0, "kappa1+kappa2+kappa_c: total linewidth must be > 0");
}

double wavenumber(double wavelength, double refractive_index) {
  if (!(wavelength > 0.0))
    throw ValidationError("wavelength: must be > 0");
  if (!(refractive_index >= 1.0))
    throw ValidationError("refractive_index: must be >= 1");
  return two_pi * refractive_index / wavelength;
}

DopplerShifts doppler_shifts(const SystemParams &p, Direction d) {
  const double kv =
      wavenumber(p.wavelength, p.refractive_index) * p.velocity;
  if (d == Direction::co)
    return {kv, 0.0}; // equal shifts, two-photon resonance preserved
  if (p.sign_convention == SignConvention::as_printed)
    return {kv, 2.0 * kv};
  return {-kv, -2.0 * kv};
}

SystemParams parse_params(const std::string &json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!doc.is_object())
    throw ValidationError("config: top level must be a JSON object");

  SystemParams p = default_params();

  std::string units;
  if (doc.contains("units")) {
    if (!doc["units"].is_string())
      throw ValidationError("units: must be a string");
    units = doc["units"].get<std::string>();
    unit_factor(units); // validates the tag
  }

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string &key = it.key();
    if (key == "units")
      continue;
    if (key == "sign_convention") {
      if (!it.value().is_string())
        throw ValidationError("sign_convention: must be a string");
      p.sign_convention = parse_convention(it.value().get<std::string>());
      continue;
    }
    double *slot = field_slot(p, key);
    if (slot == nullptr)
      throw ValidationError("unknown key '" + key + "'");
    if (!it.value().is_number())
      throw ValidationError(key + ": must be a number");
    double value = it.value().get<double>();
    if (is_frequency_key(key)) {
      if (units.empty())
        throw ValidationError(
            "units: required when frequency keys are present (found '" + key +
            "')");
      value *= unit_factor(units);
    }
    *slot = value;
  }

  validate(p);
  return p;
}

SystemParams parse_params_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

void set_field(SystemParams &p, std::string_view key, std::string_view value,
               std::string_view units) {
  if (key == "sign_convention") {
    p.sign_convention = parse_convention(value);
    return;
  }
  double *slot = field_slot(p, key);
  if (slot == nullptr)
    throw ValidationError("unknown key '" + std::string(key) + "'");
  double v = 0.0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ValidationError(std::string(key) + ": cannot parse number '" +
                          std::string(value) + "'");
  if (is_frequency_key(key))
    v *= unit_factor(units);
  *slot = v;
  validate(p);
}

double get_field(const SystemParams &p, std::string_view key) {
  SystemParams copy = p;
  const double *slot = field_slot(copy, key);
  if (slot == nullptr)
    throw ValidationError("unknown key '" + std::string(key) + "'");
  return *slot;
}

std::string params_to_json(const SystemParams &p) {
  nlohmann::json j; // object keys serialize sorted
  for (auto key : frequency_keys)
    j[std::string(key)] = get_field(p, key);
  for (auto key : plain_keys)
    j[std::string(key)] = get_field(p, key);
  j["sign_convention"] = std::string(to_string(p.sign_convention));
  j["units"] = "rad_per_s";
  return j.dump();
}

std::string params_fingerprint(const SystemParams &p) {
  return fnv1a64_hex(params_to_json(p));
}

std::string_view to_string(Direction d) {
  return d == Direction::co ? "co" : "counter";
}

std::string_view to_string(SignConvention c) {
  return c == SignConvention::as_printed ? "as_printed" : "physical_text";
}

} // namespace nonrecip
