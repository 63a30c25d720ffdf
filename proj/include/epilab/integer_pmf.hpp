#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

namespace epilab {

/// A probability mass function on a finite window of the integers:
/// p(k_min + i) = probs[i]. Normalized at construction (sum = 1 within
/// 1e-12); mean and variance are stored and recomputable from probs.
struct IntegerPmf {
  long k_min = 0;
  Eigen::ArrayXd probs;
  double mean = 0.0;
  double variance = 0.0;
  double tail_mass_dropped = 0.0;

  Eigen::Index n() const { return probs.size(); }
  long k_max() const { return k_min + static_cast<long>(probs.size()) - 1; }
  /// p(k), zero outside the window.
  double at(long k) const {
    const long i = k - k_min;
    if (i < 0 || i >= static_cast<long>(probs.size())) return 0.0;
    return probs[static_cast<Eigen::Index>(i)];
  }
};

IntegerPmf make_pmf(long k_min, Eigen::ArrayXd probs, double tail_mass_dropped = 0.0);

/// P(Z = k) = integral of the N(mu, sigma2) density over [k, k+1).
/// The window must capture at least 1 - 1e-12 of the mass.
IntegerPmf discretized_gaussian(double mu, double sigma2, long k_lo, long k_hi);
IntegerPmf discretized_gaussian(double mu, double sigma2);  // auto window

/// log P(Z = k) for the discretized Gaussian, stable far into the tails
/// (finite long after the pmf value itself underflows).
double discretized_gaussian_log_pmf(double mu, double sigma2, long k);

/// Families used throughout the test sweeps. Infinite supports are cut at
/// the given tail mass per side and renormalized (dropped mass recorded).
IntegerPmf geometric_pmf(double q, double tail = 1e-14);
IntegerPmf binomial_pmf(long n, double p, double tail = 1e-14);
IntegerPmf poisson_pmf(double lambda, double tail = 1e-14);
IntegerPmf uniform_pmf(long a, long b);
IntegerPmf point_mass(long k);

/// Translate by an integer (exact).
IntegerPmf shift(const IntegerPmf& p, long c);

struct LogConcavityCertificate {
  bool is_log_concave = false;
  std::optional<long> first_violation;
  std::optional<double> violation_magnitude;  // p(k-1)p(k+1) - p(k)^2
};

/// p(k)^2 >= p(k-1) p(k+1) - 1e-15 for every interior k of the support
/// hull; zeros at the window edges pass.
LogConcavityCertificate check_log_concave(const IntegerPmf& p);

/// Exact discrete convolution with itself (direct for small supports, FFT
/// above; both agree to ~1e-15 absolute).
IntegerPmf self_convolve(const IntegerPmf& p);
IntegerPmf convolve(const IntegerPmf& p, const IntegerPmf& q);

/// H(X1 + X2) - H(X1) - (1/2) log 2 for X1, X2 iid with pmf p.
double tao_deficit(const IntegerPmf& p);

std::string to_json(const IntegerPmf& p);
IntegerPmf pmf_from_json(const std::string& text);

}  // namespace epilab
