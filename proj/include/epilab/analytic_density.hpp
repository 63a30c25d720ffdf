#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epilab/grid_density.hpp"

namespace epilab {

struct Gaussian {
  double mean = 0.0;
  double variance = 1.0;
};

struct GaussianMixture {
  std::vector<double> weights;      // simplex
  std::vector<Gaussian> components;
};

struct Uniform {
  double a = 0.0;
  double b = 1.0;
};

struct Cauchy {
  double location = 0.0;
  double scale = 1.0;
};

struct Exponential {
  double rate = 1.0;
};

/// Closed-form density families. Every variant evaluates a pointwise pdf
/// and an exact CDF; Gaussian/Uniform/Exponential/Cauchy also carry exact
/// entropies and moments. Cauchy is here precisely because it has no
/// finite absolute moment of any order k >= 1.
using AnalyticDensity = std::variant<Gaussian, GaussianMixture, Uniform, Cauchy, Exponential>;

/// Validates parameters (finiteness, variance > 0, weights on the simplex
/// within 1e-12) and returns the density unchanged.
AnalyticDensity validate(AnalyticDensity d);

double pdf(const AnalyticDensity& d, double x);
double cdf(const AnalyticDensity& d, double x);

/// Derivative of the pdf; used by test oracles for Fisher information.
double pdf_derivative(const AnalyticDensity& d, double x);

double mean_of(const AnalyticDensity& d);       // Cauchy: NaN (undefined)
double variance_of(const AnalyticDensity& d);   // Cauchy: +inf

/// k-th raw (or absolute) moment; +infinity is the divergence flag value
/// (every Cauchy moment with k >= 1).
double moment(const AnalyticDensity& d, int k, bool absolute = false);

/// Exact differential entropy where the family has one (nats).
std::optional<double> closed_form_entropy(const AnalyticDensity& d);

/// Exact Fisher information: 1/sigma^2 (Gaussian), 1/(2 gamma^2) (Cauchy),
/// +infinity for the jump families (Uniform, Exponential); nullopt for
/// mixtures (grid route).
std::optional<double> closed_form_fisher(const AnalyticDensity& d);

/// Density of a*X + b for families closed under the map.
AnalyticDensity affine(const AnalyticDensity& d, double a, double b);

/// Window [lo, hi] holding all but tail_mass of the density, found from the
/// exact CDF. Heavy tails (Cauchy) therefore get mass-driven windows, never
/// sigma-driven ones.
std::array<double, 2> default_window(const AnalyticDensity& d, double tail_mass);

/// Sample the pdf on a uniform grid over the window and renormalize.
/// Requires the window to hold at least min_mass of the total mass (exact
/// CDF check); the default matches light-tailed use, Cauchy callers pass
/// 1 - 1e-4 per the mass-driven window policy.
GridDensity render(const AnalyticDensity& d, std::array<double, 2> window, Eigen::Index n_points,
                   double min_mass = 1.0 - 1e-10);

/// render() on the default window for the given tail mass.
GridDensity render_auto(const AnalyticDensity& d, Eigen::Index n_points, double tail_mass = 1e-12);

std::string to_json(const AnalyticDensity& d);
AnalyticDensity analytic_density_from_json(const std::string& text);

}  // namespace epilab
