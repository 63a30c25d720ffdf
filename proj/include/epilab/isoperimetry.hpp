#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "epilab/integer_pmf.hpp"

namespace epilab {

/// Density of X + U for integer-valued X and U uniform on [0,1): constant
/// height p(k) on each unit cell [k, k+1), with exact CDF prefix sums at
/// the integers (cdf_at_integers[j] = F(k_min + j), so index 0 holds 0 and
/// index n holds ~1).
struct PiecewiseConstantDensity {
  long k_min = 0;
  Eigen::ArrayXd heights;
  std::vector<double> cdf_at_integers;

  Eigen::Index cells() const { return heights.size(); }
};

PiecewiseConstantDensity smooth_with_uniform(const IntegerPmf& p);

double pcd_mean(const PiecewiseConstantDensity& d);
double pcd_variance(const PiecewiseConstantDensity& d);

struct IsoperimetryReport {
  double iso_constant = 0.0;   // Is(nu)
  long argmin_cell = 0;        // cell [k, k+1) attaining the infimum
  double argmin_point = 0.0;   // x in that cell where min{F,1-F} peaks
  double cheeger_upper = 0.0;  // 4 / Is^2
  double rayleigh_lower = 0.0; // best Var(g)/E[(g')^2] over the test family
  double sigma2 = 0.0;         // variance of the underlying pmf
};

/// Exact isoperimetric constant of a piecewise-constant density:
/// Is = ess inf f / min{F, 1-F} over (a, b). F is linear on each cell, so
/// each cell's maximum of min{F, 1-F} sits at a cell endpoint or at the
/// median crossing (1/2 exactly), and the global infimum is a minimum over
/// cells. Zero-height edge cells are trimmed first (they lie outside
/// (a, b)); an interior zero cell means disconnected support and errors.
IsoperimetryReport isoperimetric_constant(const PiecewiseConstantDensity& d);

double cheeger_poincare_upper(double iso_constant);

/// Max of Var(g)/E[(g')^2] over a fixed family of C^1-in-the-mean test
/// functions (x, x^2, scaled sine/cosine waves, hats at each interior
/// integer), each term by exact per-cell integration. A lower bound on the
/// Poincare constant, never an upper bound.
double rayleigh_lower_bound(const PiecewiseConstantDensity& d);

/// Full report for X + U; sigma2 is the variance of the pmf itself.
IsoperimetryReport isoperimetry_report(const IntegerPmf& p);

struct Prop10Report {
  bool passes = false;
  double sigma2 = 0.0;
  double iso_constant = 0.0;
  double cheeger_upper = 0.0;
  double budget = 0.0;          // 438244 * sigma2
  double observed_ratio = 0.0;  // cheeger_upper / sigma2
  double proof_chain_margin = 0.0;  // max over probes of min{F,1-F} - 331 sigma f; <= 0 when the chain holds
};

/// Verifies C_P(X+U) <= 438244 sigma^2 through the exact Cheeger route and
/// evaluates the proof-chain inequality min{F,1-F} <= 331 sigma f at every
/// interior cell endpoint and at the median. Requires p log-concave with
/// sigma^2 >= 4.
Prop10Report verify_prop10(const IntegerPmf& p);

/// max over interior cell endpoints and the median of
/// min{F,1-F} - 331 sigma * height (negative = inequality holds).
double proof_chain_margin(const PiecewiseConstantDensity& d, double sigma);

std::string to_json(const IsoperimetryReport& r, const std::string& input_descriptor);

}  // namespace epilab
