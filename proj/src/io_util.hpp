#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace nonrecip {

struct SweepResult;
struct SystemParams;

// Shortest decimal form that round-trips to the same double. Data files are
// diffable byte-for-byte across runs because this is the only float
// formatter used for them.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Write-temp-then-rename so partially written files are never observed.
void atomic_write_file(const std::string &path, std::string_view content);

std::string read_file(const std::string &path);

// "re,im" pair of CSV cells.
std::string csv_complex(const std::complex<double> &z);

// Sidecar describing a 2-D sweep: axes, canonical parameter echo,
// fingerprint and convention flags. Sorted keys, no timestamps, so repeated
// runs serialize byte-identically.
std::string sweep_meta_json(const SweepResult &sweep, const SystemParams &p);

} // namespace nonrecip
