#pragma once

#include <string>

#include "epilab/grid_density.hpp"
#include "epilab/integer_pmf.hpp"

namespace epilab {

// Explicit constants of the discrete stability theory.
inline constexpr double kStabilityC1 = 876489.0;       // relative-entropy factor
inline constexpr double kPoincareBudgetFactor = 438244.0;  // C_P(X+U) <= this * sigma^2
inline constexpr double kSigmaGate = 1547.0;           // scope gate for verdicts

/// D(p || discretized Gaussian with matched mean/variance). The Gaussian
/// log-pmf is evaluated in log space, so the sum stays finite over the
/// whole window of p (tail terms beyond any cut contribute < 1e-10).
/// A point mass (sigma = 0) returns +infinity.
double kl_to_discretized_gaussian(const IntegerPmf& p);

struct DiscreteStabilityReport {
  double sigma = 0.0;
  double kl_to_dgauss = 0.0;
  double tao_deficit = 0.0;
  double c1_term = 0.0;       // C1 * tao_deficit
  double required_c2 = 0.0;   // minimal C2 with kl <= c1_term + C2 log(sigma)/sigma, floored at 0
  bool passes_with_budget = false;
  bool scope_warning = false; // sigma below the verdict gate
  double c2_budget = 0.0;
};

/// Requires p log-concave. Verdicts are in scope for sigma >= 1547; smaller
/// sigma still produces the report but flags scope_warning.
DiscreteStabilityReport theorem9_report(const IntegerPmf& p, double c2_budget);

struct ContinuousStabilityReport {
  double variance = 0.0;
  double poincare_upper = 0.0;
  double deficit_half = 0.0;     // delta_EPI,1/2(X, X)
  double kl_to_gaussian = 0.0;   // D(X) vs the moment-matched Gaussian
  double bbn_bound = 0.0;        // ((2 C_P + 2 sigma^2)/sigma^2) * deficit
  double km_bound = 0.0;         // ((2 C_P + sigma^2)/sigma^2) * deficit (the tighter one)
};

/// Poincare-based stability bounds for a continuous density. The caller
/// supplies a certified Poincare upper bound (known constants, or the
/// Cheeger route below); the Rayleigh lower bound is never accepted here.
ContinuousStabilityReport continuous_stability_report(const GridDensity& f, double poincare_upper);

/// Certified Poincare upper bound for a grid density via the Cheeger
/// inequality on its cell-mass piecewise-constant approximation:
/// step^2 * 4 / Is^2 of the unit-cell lattice version.
double grid_poincare_cheeger_upper(const GridDensity& f);

std::string to_json(const DiscreteStabilityReport& r, const std::string& input_descriptor);
std::string to_json(const ContinuousStabilityReport& r, const std::string& input_descriptor);

}  // namespace epilab
