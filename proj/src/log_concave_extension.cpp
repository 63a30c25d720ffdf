#include "epilab/log_concave_extension.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"

namespace epilab {

namespace {

// (e^L - 1)/L with the L -> 0 limit.
double phi1(double L) {
  if (std::abs(L) < 1e-12) return 1.0 + 0.5 * L;
  return std::expm1(L) / L;
}

// (e^L (L - 1) + 1)/L^2 = ∫_0^1 u e^{uL} du, stable near L = 0.
double phi2(double L) {
  if (std::abs(L) < 1e-3) {
    return 0.5 + L / 3.0 + L * L / 8.0 + L * L * L / 30.0;
  }
  return (std::exp(L) * (L - 1.0) + 1.0) / (L * L);
}

}  // namespace

double ContinuousExtension::operator()(double x) const {
  const double lo = static_cast<double>(support_lo);
  const double hi = static_cast<double>(support_hi);
  if (x < lo || x > hi) return 0.0;
  if (x == hi) return base.at(support_hi);
  const long k = support_lo + static_cast<long>(std::floor(x - lo));
  const double tau = x - static_cast<double>(k);
  const double pk = base.at(k);
  if (tau == 0.0) return pk;  // exact at the integer nodes
  const double pk1 = base.at(k + 1);
  return std::exp((1.0 - tau) * std::log(pk) + tau * std::log(pk1));
}

ContinuousExtension build_extension(const IntegerPmf& p) {
  const auto cert = check_log_concave(p);
  if (!cert.is_log_concave) {
    throw NotLogConcave("build_extension: input is not log-concave (first violation at k=" +
                        std::to_string(cert.first_violation.value_or(0)) + ")");
  }
  // Positive support must be an interval.
  Eigen::Index first = -1, last = -1;
  for (Eigen::Index i = 0; i < p.n(); ++i) {
    if (p.probs[i] > 0.0) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) throw InvalidParameter("build_extension: empty support");
  for (Eigen::Index i = first; i <= last; ++i) {
    if (p.probs[i] <= 0.0) {
      throw NotLogConcave("build_extension: interior zero in the support interval");
    }
  }

  ContinuousExtension ext;
  ext.base = p;
  ext.support_lo = p.k_min + static_cast<long>(first);
  ext.support_hi = p.k_min + static_cast<long>(last);

  // Per-segment closed forms: f = p_k e^{uL} on [k, k+1], L = log(p_{k+1}/p_k).
  const Eigen::Index nseg = last - first;
  Eigen::ArrayXd seg_mass = Eigen::ArrayXd::Zero(std::max<Eigen::Index>(nseg, 1));
  Eigen::ArrayXd seg_xmass = Eigen::ArrayXd::Zero(std::max<Eigen::Index>(nseg, 1));
  double best = -1.0;
  long best_k = ext.support_lo;
  for (Eigen::Index i = first; i <= last; ++i) {
    if (p.probs[i] > best) {
      best = p.probs[i];
      best_k = p.k_min + static_cast<long>(i);
    }
  }
  ext.mode_location = static_cast<double>(best_k);
  for (Eigen::Index s = 0; s < nseg; ++s) {
    const Eigen::Index i = first + s;
    const double pk = p.probs[i];
    const double pk1 = p.probs[i + 1];
    const double L = std::log(pk1) - std::log(pk);
    const double k = static_cast<double>(p.k_min + static_cast<long>(i));
    seg_mass[s] = pk * phi1(L);
    seg_xmass[s] = pk * (k * phi1(L) + phi2(L));
  }
  ext.total_integral = nseg > 0 ? neumaier_sum(seg_mass) : 0.0;
  if (nseg == 0) {
    // single positive atom: the extension degenerates; treat as a unit cell
    ext.total_integral = p.probs[first];
    ext.extension_mean = static_cast<double>(ext.support_lo);
  } else {
    ext.extension_mean = neumaier_sum(seg_xmass) / ext.total_integral;
  }
  return ext;
}

ConcentrationCheck check_concentration_lemma(const std::function<double(double)>& f,
                                             double total_integral, double mu, double x0,
                                             double x) {
  const double fmu = f(mu);
  if (!(fmu > 0.0)) throw InvalidParameter("concentration: f(mu) must be positive");
  ConcentrationCheck out;
  const double base = 3.0 * total_integral / fmu;
  if (x >= x0) {
    out.threshold = base + std::max(mu, 0.0);
    if (x0 < out.threshold) {
      throw PreconditionUnmet("concentration: x0 below threshold (scope)");
    }
  } else {
    out.threshold = -base - std::max(-mu, 0.0);
    if (x0 > out.threshold) {
      throw PreconditionUnmet("concentration: x0 above negative-side threshold (scope)");
    }
  }
  out.lhs = f(x);
  out.rhs = f(x0) * std::exp2(-(x - mu) / (x0 - mu) + 1.0);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

ConcentrationCheck check_concentration_lemma(const ContinuousExtension& f, double x0, double x) {
  return check_concentration_lemma([&f](double t) { return f(t); }, f.total_integral,
                                   f.extension_mean, x0, x);
}

TailLemmaResult check_tail_lemma(const IntegerPmf& p, long m, long k) {
  const double sigma = std::sqrt(p.variance);
  if (sigma < 2.0 - 1e-12) throw PreconditionUnmet("tail lemma: sigma >= 2 required");
  const double mu_p = p.mean;
  const double gate = 49.0 * sigma + 2.0 * mu_p + 8.0;
  bool positive_side;
  if (static_cast<double>(m) >= gate && k >= m) {
    positive_side = true;
  } else if (static_cast<double>(m) <= -gate && k <= m) {
    positive_side = false;
  } else {
    throw PreconditionUnmet(
        "tail lemma: need k >= m >= 49 sigma + 2 mu_p + 8 (or the mirrored condition)");
  }
  const ContinuousExtension ext = build_extension(p);  // throws NotLogConcave

  TailLemmaResult out;
  out.mu_constructed = ext.extension_mean;
  out.lhs = p.at(k);
  const double M = 8.0 + 2.0 * std::abs(mu_p);

  const auto rhs_at = [&](double mu) {
    return p.at(m) * std::exp2(-(static_cast<double>(k) - mu) / (static_cast<double>(m) - mu) + 1.0);
  };
  out.rhs_at_constructed = rhs_at(out.mu_constructed);
  out.holds_at_extension_mean = out.lhs <= out.rhs_at_constructed * (1.0 + 1e-12) + 1e-300;

  // The bound is monotone in mu (rhs decreases as mu increases on the
  // positive side), so the validating set within [-M, M] is an interval.
  const double pm = p.at(m);
  const double pk = p.at(k);
  if (pk <= 0.0) {
    out.holds_for_some_mu = true;
    out.mu_interval = {-M, M};
    return out;
  }
  if (pm <= 0.0) {
    out.holds_for_some_mu = false;
    out.mu_interval = {1.0, -1.0};  // empty
    return out;
  }
  if (k == m) {
    out.holds_for_some_mu = true;  // rhs = 2 p(m) >= p(m)
    out.mu_interval = {-M, M};
    return out;
  }
  // p(k) <= p(m) 2^{-(k-mu)/(m-mu)+1}  <=>  (k-mu)/(m-mu) <= B,
  // B = 1 + log2(p(m)/p(k)); for the positive side m - mu > 0 on [-M, M].
  const double B = 1.0 + (std::log2(pm) - std::log2(pk));
  double lo = -M, hi = M;
  const double kk = static_cast<double>(k), mm = static_cast<double>(m);
  if (positive_side) {
    // k - mu <= B (m - mu)  <=>  mu (B - 1) <= B m - k
    if (B > 1.0) {
      hi = std::min(hi, (B * mm - kk) / (B - 1.0));
    } else if (B < 1.0) {
      lo = std::max(lo, (B * mm - kk) / (B - 1.0));
    } else if (kk > mm) {
      lo = 1.0;
      hi = -1.0;  // k - mu <= m - mu impossible
    }
  } else {
    // mirrored side: m - mu < 0 on [-M, M], inequality flips
    if (B > 1.0) {
      lo = std::max(lo, (B * mm - kk) / (B - 1.0));
    } else if (B < 1.0) {
      hi = std::min(hi, (B * mm - kk) / (B - 1.0));
    } else if (kk < mm) {
      lo = 1.0;
      hi = -1.0;
    }
  }
  out.mu_interval = {lo, hi};
  out.holds_for_some_mu = lo <= hi;
  return out;
}

MaxPmfBounds maxpmf_bounds(const IntegerPmf& p) {
  const auto cert = check_log_concave(p);
  if (!cert.is_log_concave) throw NotLogConcave("maxpmf_bounds: input is not log-concave");
  const double sigma = std::sqrt(p.variance);
  if (sigma < 2.0 - 1e-12) throw PreconditionUnmet("maxpmf_bounds: sigma >= 2 required");
  MaxPmfBounds out;
  out.max_p = p.probs.maxCoeff();
  out.lower = 1.0 / (4.0 * sigma);
  out.upper = 1.0 / sigma;
  out.within = out.max_p >= out.lower - 1e-12 && out.max_p <= out.upper + 1e-12;
  return out;
}

}  // namespace epilab
