#include "epilab/integer_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "epilab/entropy.hpp"
#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

#include "json.hpp"

namespace epilab {

namespace {

// Trim leading/trailing entries whose one-sided cumulative mass stays below
// `tail`; returns the dropped mass.
double trim_tails(long& k_min, std::vector<double>& v, double tail) {
  double dropped = 0.0;
  std::size_t lo = 0;
  double acc = 0.0;
  while (lo < v.size() && acc + v[lo] < tail) {
    acc += v[lo];
    ++lo;
  }
  dropped += acc;
  std::size_t hi = v.size();
  acc = 0.0;
  while (hi > lo && acc + v[hi - 1] < tail) {
    acc += v[hi - 1];
    --hi;
  }
  dropped += acc;
  k_min += static_cast<long>(lo);
  v = std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(lo),
                          v.begin() + static_cast<std::ptrdiff_t>(hi));
  return dropped;
}

IntegerPmf from_vector(long k_min, const std::vector<double>& v, double dropped) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) a[static_cast<Eigen::Index>(i)] = v[i];
  return make_pmf(k_min, std::move(a), dropped);
}

}  // namespace

IntegerPmf make_pmf(long k_min, Eigen::ArrayXd probs, double tail_mass_dropped) {
  if (probs.size() < 1) throw InvalidParameter("pmf: empty support");
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i])) throw InvalidParameter("pmf: non-finite probability");
    if (probs[i] < 0.0) {
      if (probs[i] < -1e-12) throw InvalidParameter("pmf: negative probability");
      probs[i] = 0.0;
    }
  }
  const double total = neumaier_sum(probs);
  if (!(total > 0.0)) throw InvalidParameter("pmf: zero total mass");
  probs /= total;

  IntegerPmf p;
  p.k_min = k_min;
  p.probs = std::move(probs);
  p.tail_mass_dropped = tail_mass_dropped;

  Eigen::ArrayXd kx(p.probs.size());
  for (Eigen::Index i = 0; i < p.probs.size(); ++i) {
    kx[i] = static_cast<double>(k_min + static_cast<long>(i));
  }
  p.mean = neumaier_sum((kx * p.probs).eval());
  p.variance = neumaier_sum(((kx - p.mean).square() * p.probs).eval());
  return p;
}

double discretized_gaussian_log_pmf(double mu, double sigma2, long k) {
  const double s = std::sqrt(sigma2);
  const double a = (static_cast<double>(k) - mu) / s;
  const double b = (static_cast<double>(k) + 1.0 - mu) / s;
  if (a >= 0.0) {
    // right tail: p = sf(a) - sf(b), with sf(b) < sf(a)
    const double la = log_normal_sf(a);
    const double lb = log_normal_sf(b);
    return la + std::log1p(-std::exp(lb - la));
  }
  if (b <= 0.0) {
    const double la = log_normal_sf(-b);
    const double lb = log_normal_sf(-a);
    return la + std::log1p(-std::exp(lb - la));
  }
  return std::log(normal_cdf(b) - normal_cdf(a));
}

IntegerPmf discretized_gaussian(double mu, double sigma2, long k_lo, long k_hi) {
  if (!std::isfinite(mu) || !(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw InvalidParameter("discretized_gaussian: bad parameters");
  }
  if (k_hi < k_lo) throw InvalidParameter("discretized_gaussian: empty window");
  const double s = std::sqrt(sigma2);
  const double captured =
      normal_cdf((static_cast<double>(k_hi) + 1.0 - mu) / s) - normal_cdf((static_cast<double>(k_lo) - mu) / s);
  if (captured < 1.0 - 1e-12) {
    throw WindowTooSmall("discretized_gaussian: window captures " + std::to_string(captured));
  }
  const std::size_t n = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = k_lo + static_cast<long>(i);
    v[i] = std::exp(discretized_gaussian_log_pmf(mu, sigma2, k));
  }
  return from_vector(k_lo, v, std::max(0.0, 1.0 - captured));
}

IntegerPmf discretized_gaussian(double mu, double sigma2) {
  const double s = std::sqrt(sigma2);
  const long k_lo = static_cast<long>(std::floor(mu - 9.5 * s)) - 1;
  const long k_hi = static_cast<long>(std::ceil(mu + 9.5 * s)) + 1;
  return discretized_gaussian(mu, sigma2, k_lo, k_hi);
}

IntegerPmf geometric_pmf(double q, double tail) {
  if (!(q > 0.0) || q >= 1.0) throw InvalidParameter("geometric: q must be in (0,1)");
  // (1-q) q^k on k >= 0; window to one-sided tail mass `tail`: q^k < tail.
  const long k_max = static_cast<long>(std::ceil(std::log(tail) / std::log(q))) + 1;
  std::vector<double> v(static_cast<std::size_t>(k_max + 1));
  double logq = std::log(q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = (1.0 - q) * std::exp(logq * static_cast<double>(i));
  }
  return from_vector(0, v, std::pow(q, static_cast<double>(k_max + 1)));
}

IntegerPmf binomial_pmf(long n, double p, double tail) {
  if (n < 1 || !(p > 0.0) || !(p < 1.0)) throw InvalidParameter("binomial: bad parameters");
  const double mu = static_cast<double>(n) * p;
  const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  const long lo = std::max(0L, static_cast<long>(std::floor(mu - 12.0 * sd - 8.0)));
  const long hi = std::min(n, static_cast<long>(std::ceil(mu + 12.0 * sd + 8.0)));
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double k = static_cast<double>(lo + static_cast<long>(i));
    const double lpmf = lg_n1 - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(n) - k + 1.0) +
                        k * lp + (static_cast<double>(n) - k) * lq;
    v[i] = std::exp(lpmf);
  }
  long k0 = lo;
  const double dropped = trim_tails(k0, v, tail);
  return from_vector(k0, v, dropped);
}

IntegerPmf poisson_pmf(double lambda, double tail) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidParameter("poisson: bad lambda");
  const double sd = std::sqrt(lambda);
  const long lo = std::max(0L, static_cast<long>(std::floor(lambda - 14.0 * sd - 20.0)));
  const long hi = static_cast<long>(std::ceil(lambda + 14.0 * sd + 20.0));
  const double ll = std::log(lambda);
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double k = static_cast<double>(lo + static_cast<long>(i));
    v[i] = std::exp(k * ll - lambda - std::lgamma(k + 1.0));
  }
  long k0 = lo;
  const double dropped = trim_tails(k0, v, tail);
  return from_vector(k0, v, dropped);
}

IntegerPmf uniform_pmf(long a, long b) {
  if (b < a) throw InvalidParameter("uniform pmf: b < a");
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(b - a + 1),
                                              1.0 / static_cast<double>(b - a + 1));
  return make_pmf(a, std::move(v));
}

IntegerPmf point_mass(long k) {
  Eigen::ArrayXd v(1);
  v[0] = 1.0;
  return make_pmf(k, std::move(v));
}

IntegerPmf shift(const IntegerPmf& p, long c) {
  IntegerPmf out = p;
  out.k_min += c;
  out.mean += static_cast<double>(c);
  return out;
}

LogConcavityCertificate check_log_concave(const IntegerPmf& p) {
  LogConcavityCertificate cert;
  cert.is_log_concave = true;
  const Eigen::Index n = p.n();
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double lhs = p.probs[i] * p.probs[i];
    const double rhs = p.probs[i - 1] * p.probs[i + 1];
    if (lhs < rhs - 1e-15) {
      cert.is_log_concave = false;
      cert.first_violation = p.k_min + static_cast<long>(i);
      cert.violation_magnitude = rhs - lhs;
      return cert;
    }
  }
  return cert;
}

IntegerPmf convolve(const IntegerPmf& p, const IntegerPmf& q) {
  Eigen::ArrayXd c;
  if (p.n() <= 512 && q.n() <= 512) {
    c = direct_linear_convolve(p.probs, q.probs);
  } else {
    c = fft_linear_convolve(p.probs, q.probs);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c[i] < 0.0) c[i] = 0.0;  // FFT roundoff
    }
  }
  return make_pmf(p.k_min + q.k_min, std::move(c), p.tail_mass_dropped + q.tail_mass_dropped);
}

IntegerPmf self_convolve(const IntegerPmf& p) { return convolve(p, p); }

double tao_deficit(const IntegerPmf& p) {
  return discrete_entropy(self_convolve(p)) - discrete_entropy(p) - 0.5 * kLog2;
}

std::string to_json(const IntegerPmf& p) {
  JsonWriter w;
  w.begin_object();
  w.key("k_min").integer(p.k_min);
  w.key("probs").begin_array();
  for (Eigen::Index i = 0; i < p.n(); ++i) w.number(p.probs[i]);
  w.end_array();
  w.end_object();
  return w.str();
}

IntegerPmf pmf_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const long k_min = j.at("k_min").get<long>();
  const auto& probs = j.at("probs");
  Eigen::ArrayXd v(static_cast<Eigen::Index>(probs.size()));
  Eigen::Index i = 0;
  for (const auto& x : probs) v[i++] = x.get<double>();
  return make_pmf(k_min, std::move(v));
}

}  // namespace epilab
