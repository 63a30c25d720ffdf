#pragma once

#include <functional>

#include "epilab/analytic_density.hpp"
#include "epilab/grid_density.hpp"

namespace epilab {

/// A cumulative distribution function with its effective support
/// [support_low, support_high]: F(support_low) <= 1e-12 and
/// 1 - F(support_high) <= 1e-12.
struct DistributionFunction {
  std::function<double(double)> F;
  double support_low = 0.0;
  double support_high = 0.0;
};

DistributionFunction make_cdf(const AnalyticDensity& d);
DistributionFunction make_cdf(const GridDensity& f);  // cumulative trapezoid, clipped to [0,1]

struct LevySamplingSpec {
  double x_lo = 0.0;
  double x_hi = 0.0;
  int n = 4096;
  double tol = 1e-9;  // bisection tolerance on epsilon
};

/// Sampling window covering both supports.
LevySamplingSpec levy_spec_for(const DistributionFunction& F, const DistributionFunction& G,
                               int n = 4096, double tol = 1e-9);

/// Levy distance: the infimal eps with
///   F(x-eps)-eps <= G(x) <= F(x+eps)+eps  for all sampled x,
/// found by bisection on eps. The envelope is checked at the sample points,
/// so the result approximates the true distance to within one grid cell of
/// the sampling spec (plus the bisection tolerance).
/// Throws NonMonotoneCDF if a sampled CDF decreases by more than 1e-10.
double levy_distance(const DistributionFunction& F, const DistributionFunction& G,
                     const LevySamplingSpec& spec);

}  // namespace epilab
