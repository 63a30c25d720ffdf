#pragma once

#include <string>

#include "epilab/analytic_density.hpp"
#include "epilab/integer_pmf.hpp"

namespace epilab {

/// Continuous families: "gauss:mean,variance", "uniform:a,b",
/// "cauchy:location,scale", "exp:rate",
/// "mix:w,mean,var;w,mean,var;..." (weights renormalized).
/// Throws UsageError on anything unrecognized.
AnalyticDensity parse_analytic_descriptor(const std::string& s);

/// Integer families: "dgauss:mu,sigma2", "geom:q", "binom:n,p",
/// "poisson:lambda", "uniform:a,b".
IntegerPmf parse_pmf_descriptor(const std::string& s);

}  // namespace epilab
