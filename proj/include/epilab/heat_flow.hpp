#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epilab/grid_density.hpp"

namespace epilab {

/// f * phi_t (Gaussian smoothing with variance t). The grid extends by the
/// kernel half-width (default 8 sqrt(t)) on each side and is renormalized.
GridDensity gaussian_smooth(const GridDensity& f, double t);
GridDensity gaussian_smooth(const GridDensity& f, double t, double kernel_halfwidth);

/// Smooth at several variances with one shared forward FFT of f and a
/// common kernel half-width, so all outputs live on the same grid (the
/// residual checks difference them pointwise).
std::vector<GridDensity> gaussian_smooth_multi(const GridDensity& f, const std::vector<double>& ts,
                                               double kernel_halfwidth);

/// Variance-preserving Gaussian perturbation sqrt(t) X + sqrt(1-t) Z:
/// t = 1 returns f, t = 0 returns a standard normal on f's step.
GridDensity perturb(const GridDensity& f, double t);

/// Max over interior grid points of
///   |(g_{t+dt} - g_{t-dt})/(2 dt) - (1/2) second-central-difference of g_t|.
/// Second order in both dt and the grid step.
double heat_equation_residual(const GridDensity& f, double t, double dt);

/// |(h(f*phi_{t+dt}) - h(f*phi_{t-dt}))/(2 dt) - (1/2) I(f*phi_t)|.
double debruijn_residual(const GridDensity& f, double t, double dt);

struct ZeroLimitRow {
  double t = 0.0;
  double entropy = 0.0;       // h(f * phi_t)
  double half_fisher = 0.0;   // (1/2) I(f * phi_t)
  double dh_forward = 0.0;    // difference quotient toward the next (smaller) t
};

/// t -> 0 study along a decreasing t sequence: entropy column for the
/// continuity check, half-Fisher and forward-difference columns for the
/// derivative limit. When h_at_zero is supplied, the last row's quotient
/// is taken against it.
std::vector<ZeroLimitRow> debruijn_zero_limit(const GridDensity& f, const std::vector<double>& ts,
                                              std::optional<double> h_at_zero = std::nullopt);

struct DeficitReport {
  double lambda = 0.0;
  double h_x = 0.0;
  double h_y = 0.0;
  double h_mix = 0.0;
  double deficit = 0.0;  // h_mix - lambda h_x - (1-lambda) h_y
};

/// EPI deficit of sqrt(lambda) X + sqrt(1-lambda) Y. For lambda = 1/2 on a
/// shared step the mix entropy uses h(X+Y) - (1/2) log 2 exactly (no
/// resampling); otherwise the inputs are rescaled (resampled) and convolved.
DeficitReport epi_deficit(const GridDensity& f, const GridDensity& g, double lambda);

/// Density of sqrt(lambda) X + sqrt(1-lambda) Y on a grid.
GridDensity epi_mix(const GridDensity& f, const GridDensity& g, double lambda);

struct HeatTrajectory {
  double lambda = 0.0;
  std::vector<double> times;
  std::vector<double> h_x, h_y, h_mix;
  std::vector<double> fisher_x, fisher_y, fisher_mix;
  std::vector<double> delta;                // h_mix - lambda h_x - (1-lambda) h_y
  std::vector<double> delta_prime_numeric;  // 3-point derivative (one-sided at the ends)
  std::vector<double> delta_prime_formula;  // (1/(2t)) [lambda I_x + (1-lambda) I_y - I_mix]
};

/// Samples t -> (h, I, Delta) along the perturbation path for both inputs
/// and the lambda-mix. Points are filled in parallel; the result is
/// deterministic given inputs and grid parameters.
HeatTrajectory deficit_monotonicity(const GridDensity& f, const GridDensity& g, double lambda,
                                    const std::vector<double>& t_grid);

/// h(X+Y) + h(Y+Z) - h(Y) - h(X+Y+Z); nonnegative for independent inputs.
double submodularity_gap(const GridDensity& fx, const GridDensity& fy, const GridDensity& fz);

struct WeakStabilityRow {
  double a = 0.0;
  double deficit = 0.0;            // delta_EPI,1/2(X_a, X_a)
  double levy_to_gaussian = 0.0;   // min over fitted Gaussians of d_L
};

/// X_a = (1/2) N(-a, 1-a^2) + (1/2) N(a, 1-a^2): deficit and best-Gaussian
/// Levy distance along a decreasing a-sequence, both columns tending to 0.
std::vector<WeakStabilityRow> weak_stability_demo(const std::vector<double>& a_sequence,
                                                  Eigen::Index n_points = 1 << 14);

/// Trajectory CSV: header t,h_x,h_y,h_mix,I_x,I_y,I_mix,delta,dprime_num,
/// dprime_formula; one row per t; 17-significant-digit decimals.
std::string trajectory_csv(const HeatTrajectory& tr);

}  // namespace epilab
