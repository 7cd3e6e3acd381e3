#include "analysis.hpp"

#include "errors.hpp"
#include "steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nonrecip {

namespace {

void check_grid(const Grid1D &g) {
  if (g.values.size() < 2)
    throw ValidationError("grid '" + g.axis_name + "': need >= 2 values");
  for (std::size_t i = 1; i < g.values.size(); ++i)
    if (!(g.values[i] > g.values[i - 1]))
      throw ValidationError("grid '" + g.axis_name +
                            "': values must be strictly increasing");
  for (double v : g.values)
    if (!std::isfinite(v))
      throw ValidationError("grid '" + g.axis_name + "': non-finite value");
}

// Vertex of the parabola through three samples (unequal spacing allowed).
// Returns x1 when the points are collinear.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                       double y2, double *value) {
  const double d01 = x1 - x0;
  const double d12 = x1 - x2;
  const double num = d01 * d01 * (y1 - y2) - d12 * d12 * (y1 - y0);
  const double den = d01 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0) {
    if (value != nullptr)
      *value = y1;
    return x1;
  }
  double xv = x1 - 0.5 * num / den;
  xv = std::clamp(xv, std::min(x0, x2), std::max(x0, x2));
  if (value != nullptr) {
    // Lagrange evaluation at the vertex
    const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
    *value = y0 * l0 + y1 * l1 + y2 * l2;
  }
  return xv;
}

} // namespace

Grid1D make_grid(std::string axis_name, std::vector<double> values) {
  Grid1D g{std::move(axis_name), std::move(values)};
  check_grid(g);
  return g;
}

Grid1D linspace_grid(std::string axis_name, double min, double max,
                     std::size_t n) {
  if (n < 2)
    throw ValidationError("grid '" + axis_name + "': need >= 2 points");
  if (!(max > min))
    throw ValidationError("grid '" + axis_name + "': max must exceed min");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = min + (max - min) * static_cast<double>(i) /
                     static_cast<double>(n - 1);
  v.back() = max;
  return make_grid(std::move(axis_name), std::move(v));
}

Grid1D logspace_grid(std::string axis_name, double min, double max,
                     std::size_t n) {
  if (!(min > 0.0))
    throw ValidationError("grid '" + axis_name +
                          "': log spacing requires min > 0");
  if (n < 2)
    throw ValidationError("grid '" + axis_name + "': need >= 2 points");
  if (!(max > min))
    throw ValidationError("grid '" + axis_name + "': max must exceed min");
  std::vector<double> v(n);
  const double lmin = std::log(min), lmax = std::log(max);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                               static_cast<double>(n - 1));
  v.back() = max;
  return make_grid(std::move(axis_name), std::move(v));
}

std::vector<double> spectrum(const SystemParams &p, const Grid1D &delta_p_grid,
                             Direction d) {
  check_grid(delta_p_grid);
  validate(p);
  std::vector<double> out(delta_p_grid.values.size());
  SystemParams q = p;
  for (std::size_t i = 0; i < out.size(); ++i) {
    q.delta_p = delta_p_grid.values[i];
    out[i] = transmittance(q, d);
  }
  return out;
}

SweepResult sweep2d(const SystemParams &templ, const Grid1D &omega_c_grid,
                    const Grid1D &v_grid, int threads) {
  check_grid(omega_c_grid);
  check_grid(v_grid);
  validate(templ);

  SweepResult res;
  res.omega_c_axis = omega_c_grid;
  res.v_axis = v_grid;
  res.params_fingerprint = params_fingerprint(templ);
  const std::size_t n = v_grid.values.size() * omega_c_grid.values.size();
  res.t_plus.resize(n);
  res.t_minus.resize(n);
  res.eta.resize(n);

  const std::size_t rows = v_grid.values.size();
  auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    SystemParams q = templ;
    for (std::size_t r = row_begin; r < row_end; ++r) {
      q.velocity = v_grid.values[r];
      for (std::size_t c = 0; c < omega_c_grid.values.size(); ++c) {
        q.omega_c_rabi = omega_c_grid.values[c];
        const double tp = transmittance(q, Direction::co);
        const double tm = transmittance(q, Direction::counter);
        const std::size_t k = res.index(r, c);
        res.t_plus[k] = tp;
        res.t_minus[k] = tm;
        res.eta[k] = contrast_from(tp, tm);
      }
    }
  };

  std::size_t nthreads = threads > 0
                             ? static_cast<std::size_t>(threads)
                             : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, rows);
  if (nthreads <= 1) {
    fill_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (rows + nthreads - 1) / nthreads;
    for (std::size_t k = 0; k < nthreads; ++k) {
      const std::size_t b = k * chunk;
      const std::size_t e = std::min(rows, b + chunk);
      if (b >= e)
        break;
      pool.emplace_back(fill_rows, b, e);
    }
    for (auto &t : pool)
      t.join();
  }
  return res;
}

PeakFeature find_extremum(std::span<const double> x, std::span<const double> y,
                          ExtremumMode mode) {
  if (x.size() != y.size())
    throw ValidationError("find_extremum: x/y size mismatch");
  if (x.size() < 5)
    throw ValidationError("find_extremum: need >= 5 samples");

  const double sign = mode == ExtremumMode::minimum ? 1.0 : -1.0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (sign * y[i] < sign * y[best])
      best = i;

  PeakFeature f;
  f.fwhm = std::numeric_limits<double>::quiet_NaN();
  if (best == 0 || best + 1 == y.size()) {
    f.location = x[best];
    f.extremum_value = y[best];
    f.valid = false;
    f.diagnostic = "extremum sits on the grid boundary";
    return f;
  }
  double value = y[best];
  f.location = parabola_vertex(x[best - 1], y[best - 1], x[best], y[best],
                               x[best + 1], y[best + 1], &value);
  f.extremum_value = value;
  f.valid = true;
  return f;
}

PeakFeature fwhm_of_peak(std::span<const double> x,
                         std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError("fwhm_of_peak: x/y size mismatch");
  if (x.size() < 5)
    throw ValidationError("fwhm_of_peak: need >= 5 samples");

  std::size_t peak = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[peak])
      peak = i;

  PeakFeature f;
  f.location = x[peak];
  f.extremum_value = y[peak];
  f.fwhm = std::numeric_limits<double>::quiet_NaN();

  if (peak > 0 && peak + 1 < y.size()) {
    double value = y[peak];
    f.location = parabola_vertex(x[peak - 1], y[peak - 1], x[peak], y[peak],
                                 x[peak + 1], y[peak + 1], &value);
    f.extremum_value = std::max(value, y[peak]);
  }

  const double half = 0.5 * f.extremum_value;

  auto interpolate = [&](std::size_t lo, std::size_t hi) {
    // y crosses `half` between samples lo and hi
    const double t = (half - y[lo]) / (y[hi] - y[lo]);
    return x[lo] + t * (x[hi] - x[lo]);
  };

  double left = 0.0, right = 0.0;
  bool have_left = false, have_right = false;
  for (std::size_t i = peak; i > 0; --i) {
    if (y[i - 1] < half && y[i] >= half) {
      left = interpolate(i - 1, i);
      have_left = true;
      break;
    }
  }
  for (std::size_t i = peak; i + 1 < y.size(); ++i) {
    if (y[i + 1] < half && y[i] >= half) {
      right = interpolate(i + 1, i);
      have_right = true;
      break;
    }
  }

  if (!have_left || !have_right) {
    f.valid = false;
    f.diagnostic = std::string("half-maximum crossing not bracketed on the ") +
                   (!have_left ? "left" : "right");
    return f;
  }
  f.fwhm = right - left;
  f.valid = true;
  return f;
}

std::vector<FwhmPoint>
fwhm_vs_g_scan(const Grid1D &g_grid, const Grid1D &v_grid,
               const std::function<double(double, double)> &eta_eval) {
  check_grid(g_grid);
  check_grid(v_grid);

  std::vector<FwhmPoint> out;
  out.reserve(g_grid.values.size());
  std::vector<double> curve(v_grid.values.size());
  std::size_t valid_count = 0;
  for (double g : g_grid.values) {
    for (std::size_t i = 0; i < curve.size(); ++i)
      curve[i] = eta_eval(g, v_grid.values[i]);
    const PeakFeature f = fwhm_of_peak(v_grid.values, curve);
    out.push_back({g, f.fwhm, f.valid});
    if (f.valid)
      ++valid_count;
  }
  if (valid_count < 3)
    throw NumericalError(
        "fwhm_vs_g_scan: fewer than 3 valid widths (" +
        std::to_string(valid_count) + " of " +
        std::to_string(g_grid.values.size()) + "); no fit is possible");
  return out;
}

std::vector<FwhmPoint> fwhm_vs_g_scan(const SystemParams &templ,
                                      const Grid1D &g_grid,
                                      const Grid1D &v_grid) {
  validate(templ);
  SystemParams q = templ;
  return fwhm_vs_g_scan(g_grid, v_grid, [&q](double g, double v) {
    q.g = g;
    q.velocity = v;
    return contrast(q);
  });
}

PowerLawFit power_law_fit(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError("power_law_fit: x/y size mismatch");
  if (x.size() < 3)
    throw ValidationError("power_law_fit: need >= 3 points");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw ValidationError("power_law_fit: point " + std::to_string(i) +
                            " is not strictly positive (x=" +
                            std::to_string(x[i]) + ", y=" +
                            std::to_string(y[i]) + ")");
  }

  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0)
    throw ValidationError("power_law_fit: all x identical");

  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / den;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.prefactor = std::exp(intercept);

  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ly = std::log(y[i]);
    const double pred = fit.exponent * std::log(x[i]) + intercept;
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - ybar) * (ly - ybar);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

} // namespace nonrecip
