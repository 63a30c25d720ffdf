#pragma once

#include <Eigen/Core>
#include <string>

namespace epilab {

/// A probability density sampled on a uniform grid:
/// f(x_i) = values[i] at x_i = grid_start + i * grid_step.
/// Construction normalizes the trapezoid mass to 1; treat instances as
/// immutable afterwards (all operations return new densities).
struct GridDensity {
  double grid_start = 0.0;
  double grid_step = 0.0;
  Eigen::ArrayXd values;
  // Mass known to lie outside the window at construction time. Diagnostic
  // only; not part of the serialized form.
  double tail_mass_dropped = 0.0;

  Eigen::Index n() const { return values.size(); }
  double x(Eigen::Index i) const { return grid_start + static_cast<double>(i) * grid_step; }
  double x_end() const { return x(n() - 1); }
};

/// Validates (values >= 0, step > 0, length >= 8) and normalizes.
GridDensity make_grid_density(double grid_start, double grid_step, Eigen::ArrayXd values,
                              double tail_mass_dropped = 0.0);

double mass(const GridDensity& f);
double mean(const GridDensity& f);
double variance(const GridDensity& f);

/// Trapezoid estimate of the k-th (absolute) moment.
double moment(const GridDensity& f, int k, bool absolute = false);

/// Linear convolution of two densities on grids with equal step, scaled by
/// the step (rectangle-rule approximation of the convolution integral) and
/// renormalized. Zero-pads to the next power of two >= sum of lengths, so
/// convolve(f,g) and convolve(g,f) agree bitwise.
GridDensity convolve(const GridDensity& f, const GridDensity& g);

/// Density of a*X for a > 0, resampled onto target_step (default: the
/// input step) with Catmull-Rom interpolation (error O(step^3), enough to
/// keep deficit pipelines well under their tightest 1e-8 tolerance).
GridDensity rescale(const GridDensity& f, double a);
GridDensity rescale(const GridDensity& f, double a, double target_step);

/// Evaluate f at x by Catmull-Rom interpolation (0 outside the window).
double interpolate(const GridDensity& f, double x);

std::string to_json(const GridDensity& f);
GridDensity grid_density_from_json(const std::string& text);

}  // namespace epilab
