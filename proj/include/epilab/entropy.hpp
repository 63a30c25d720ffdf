#pragma once

#include "epilab/analytic_density.hpp"
#include "epilab/grid_density.hpp"
#include "epilab/integer_pmf.hpp"

namespace epilab {

/// A functional value (nats) with its error diagnostics: refinement_gap is
/// |estimate at n points - estimate at n/2 points| on the same window;
/// tail_mass_dropped is inherited from the input grid. jump_warning marks
/// inputs the Fisher integral rejected as not absolutely continuous.
struct FunctionalEstimate {
  double value = 0.0;
  double refinement_gap = 0.0;
  double tail_mass_dropped = 0.0;
  bool jump_warning = false;
};

/// -∫ f log f by trapezoid with 0 log 0 = 0.
/// Throws NotNormalized if the trapezoid mass deviates from 1 by > 1e-6.
FunctionalEstimate differential_entropy(const GridDensity& f);

/// Closed forms for Gaussian/Uniform/Exponential/Cauchy; other analytic
/// densities are rendered (n_points, default tail 1e-12) and integrated.
FunctionalEstimate differential_entropy(const AnalyticDensity& d, Eigen::Index n_points = 1 << 16);

/// ∫ (f')^2 / f with f' by central differences (one-sided at the edges);
/// cells with f below the density floor contribute 0. If the grid shows
/// jump-like cells (|f_{i+1} - f_i| > 10 * dx * max f), the density is not
/// absolutely continuous at this resolution: value = +infinity and
/// jump_warning is set.
FunctionalEstimate fisher_information(const GridDensity& f);

/// Closed forms: Gaussian 1/sigma^2, Cauchy 1/(2 gamma^2); Uniform and
/// Exponential are jump densities (+infinity). Mixtures go via the grid.
FunctionalEstimate fisher_information(const AnalyticDensity& d, Eigen::Index n_points = 1 << 16);

/// ∫ f log(f/g) on a common grid; +infinity when g vanishes where f does
/// not. Small negative results (> -1e-9) clip to 0 (Gibbs).
FunctionalEstimate relative_entropy(const GridDensity& f, const GridDensity& g);

/// -Σ p log p in nats.
double discrete_entropy(const IntegerPmf& p);

/// Σ p log(p/q); +infinity if q(k) = 0 somewhere p(k) > 0.
double discrete_relative_entropy(const IntegerPmf& p, const IntegerPmf& q);

}  // namespace epilab
