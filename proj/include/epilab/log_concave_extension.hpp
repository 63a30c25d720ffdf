#pragma once

#include <array>
#include <functional>

#include "epilab/integer_pmf.hpp"

namespace epilab {

/// Continuous log-concave extension of a log-concave pmf: f(x) is the
/// exponential of the piecewise-linear interpolation of log p between
/// integers, zero outside the positive-probability interval. Exact at the
/// integers; the per-segment integrals are closed forms (exponentials of
/// linear functions).
struct ContinuousExtension {
  IntegerPmf base;
  long support_lo = 0;   // first k with p(k) > 0
  long support_hi = 0;   // last k with p(k) > 0
  double total_integral = 0.0;
  double extension_mean = 0.0;   // ∫ x f / ∫ f
  double mode_location = 0.0;    // integer argmax of p (leftmost)

  double operator()(double x) const;
};

/// Requires p log-concave with contiguous positive support.
ContinuousExtension build_extension(const IntegerPmf& p);

struct ConcentrationCheck {
  bool holds = false;
  double lhs = 0.0;   // f(x)
  double rhs = 0.0;   // f(x0) * 2^{-(x-mu)/(x0-mu)+1}
  double threshold = 0.0;
};

/// Concentration bound for an integrable log-concave function f with mean
/// mu = ∫xf/∫f: for x >= x0 >= 3∫f/f(mu) + mu_+,
///   f(x) <= f(x0) 2^{-(x-mu)/(x0-mu)+1},
/// and the mirrored bound for x <= x0 <= -3∫f/f(mu) - mu_-.
/// Throws PreconditionUnmet if x0 is below the threshold (scope error).
ConcentrationCheck check_concentration_lemma(const std::function<double(double)>& f,
                                             double total_integral, double mu, double x0, double x);
ConcentrationCheck check_concentration_lemma(const ContinuousExtension& f, double x0, double x);

struct TailLemmaResult {
  bool holds_at_extension_mean = false;
  bool holds_for_some_mu = false;          // existential over |mu| <= 8 + 2|mu_p|
  std::array<double, 2> mu_interval{0, 0}; // mu values validating the bound
  double mu_constructed = 0.0;             // extension mean
  double lhs = 0.0;                        // p(k)
  double rhs_at_constructed = 0.0;
};

/// Exponential tail bound for a log-concave pmf with sigma >= 2: for
/// k >= m >= 49 sigma + 2 mu_p + 8,
///   p(k) <= p(m) 2^{-(k-mu)/(m-mu)+1}  for some |mu| <= 8 + 2|mu_p|.
/// Checks both the constructed mu (extension mean) and the existential
/// form over the whole interval.
TailLemmaResult check_tail_lemma(const IntegerPmf& p, long m, long k);

struct MaxPmfBounds {
  double max_p = 0.0;
  double lower = 0.0;  // 1/(4 sigma)
  double upper = 0.0;  // 1/sigma
  bool within = false;
};

/// max_k p(k) with the sandwich [1/(4 sigma), 1/sigma]; requires p
/// log-concave with sigma >= 2. A violation indicates a non-log-concave
/// input or window truncation.
MaxPmfBounds maxpmf_bounds(const IntegerPmf& p);

}  // namespace epilab
