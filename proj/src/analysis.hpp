#pragma once

#include "params.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nonrecip {

// Strictly increasing sample axis.
struct Grid1D {
  std::string axis_name;
  std::vector<double> values;
};

Grid1D make_grid(std::string axis_name, std::vector<double> values);
Grid1D linspace_grid(std::string axis_name, double min, double max,
                     std::size_t n);
Grid1D logspace_grid(std::string axis_name, double min, double max,
                     std::size_t n);

// Rectangular (Omega_c, v) maps; rows follow v_axis, columns omega_c_axis,
// row-major storage.
struct SweepResult {
  Grid1D omega_c_axis;
  Grid1D v_axis;
  std::vector<double> t_plus;
  std::vector<double> t_minus;
  std::vector<double> eta;
  std::string params_fingerprint;

  std::size_t rows() const { return v_axis.values.size(); }
  std::size_t cols() const { return omega_c_axis.values.size(); }
  std::size_t index(std::size_t row, std::size_t col) const {
    return row * cols() + col;
  }
};

// Transmittance with delta_p replaced by each grid value.
std::vector<double> spectrum(const SystemParams &p, const Grid1D &delta_p_grid,
                             Direction d);

// Pointwise evaluation over the grid product; deterministic for any thread
// count (disjoint writes, no accumulation order).
SweepResult sweep2d(const SystemParams &templ, const Grid1D &omega_c_grid,
                    const Grid1D &v_grid, int threads = 1);

struct PeakFeature {
  double location = 0.0;
  double extremum_value = 0.0;
  double fwhm = 0.0; // NaN when not measured by the producing operation
  bool valid = false;
  std::string diagnostic;
};

enum class ExtremumMode { minimum, maximum };

// Discrete extremum refined by the parabola through it and its neighbors
// (clamped to that bracket). Boundary extrema come back valid = false.
// Requires >= 5 samples.
PeakFeature find_extremum(std::span<const double> x, std::span<const double> y,
                          ExtremumMode mode);

// Height of the dominant maximum and the distance between the two
// half-height crossings, linearly interpolated between bracketing samples.
// valid = false with a diagnostic when either crossing is not bracketed.
PeakFeature fwhm_of_peak(std::span<const double> x, std::span<const double> y);

struct FwhmPoint {
  double g = 0.0;
  double v_fwhm = 0.0;
  bool valid = false;
};

// For each g, the FWHM over v_grid of eta_eval(g, v). Invalid widths are
// reported in the output but excluded downstream; fewer than 3 valid points
// throws NumericalError.
std::vector<FwhmPoint>
fwhm_vs_g_scan(const Grid1D &g_grid, const Grid1D &v_grid,
               const std::function<double(double, double)> &eta_eval);

// Contrast of `templ` (Omega_c slice and all other fields taken from it)
// with g and velocity substituted per point.
std::vector<FwhmPoint> fwhm_vs_g_scan(const SystemParams &templ,
                                      const Grid1D &g_grid,
                                      const Grid1D &v_grid);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of ln y on ln x. All inputs must be strictly
// positive (ValidationError naming the offending point otherwise);
// requires >= 3 points.
PowerLawFit power_law_fit(std::span<const double> x,
                          std::span<const double> y);

} // namespace nonrecip
