#include "io_util.hpp"

#include "analysis.hpp"
#include "errors.hpp"
#include "params.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace nonrecip {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{})
    throw IoError("failed to format double");
  return std::string(buf.data(), end);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char out[17];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(out, 16);
}

void atomic_write_file(const std::string &path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out)
      throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec)
    throw IoError("cannot rename '" + tmp.string() + "' to '" +
                  target.string() + "': " + ec.message());
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_complex(const std::complex<double> &z) {
  return format_double(z.real()) + "," + format_double(z.imag());
}

std::string sweep_meta_json(const SweepResult &sweep, const SystemParams &p) {
  nlohmann::json j;
  j["axes"]["omega_c"] = {{"name", sweep.omega_c_axis.axis_name},
                          {"units", "rad_per_s"},
                          {"values", sweep.omega_c_axis.values}};
  j["axes"]["v"] = {{"name", sweep.v_axis.axis_name},
                    {"units", "m_per_s"},
                    {"values", sweep.v_axis.values}};
  j["params"] = nlohmann::json::parse(params_to_json(p));
  j["params_fingerprint"] = sweep.params_fingerprint;
  j["convention_flags"] = {
      {"sign_convention", std::string(to_string(p.sign_convention))},
      {"units", "rad_per_s"}};
  return j.dump(2) + "\n";
}

} // namespace nonrecip
