#include "epilab/distribution_function.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"

namespace epilab {

namespace {

double support_quantile(const AnalyticDensity& d, double p, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(d, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DistributionFunction make_cdf(const AnalyticDensity& d_in) {
  const AnalyticDensity d = validate(d_in);
  const auto w = default_window(d, 1e-12);
  DistributionFunction out;
  out.F = [d](double x) { return cdf(d, x); };
  // default_window is already quantile-based except for bounded supports.
  out.support_low = w[0];
  out.support_high = w[1];
  if (std::holds_alternative<Uniform>(d) || std::holds_alternative<Exponential>(d)) {
    // exact support edges already
  } else {
    out.support_low = support_quantile(d, 1e-12, w[0] - 1.0, w[1]);
    out.support_high = support_quantile(d, 1.0 - 1e-12, w[0], w[1] + 1.0);
  }
  return out;
}

DistributionFunction make_cdf(const GridDensity& f) {
  const Eigen::Index n = f.n();
  auto cum = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n), 0.0);
  double acc = 0.0;
  double comp = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double cell = 0.5 * (f.values[i - 1] + f.values[i]) * f.grid_step;
    const double t = acc + cell;
    if (std::abs(acc) >= std::abs(cell)) {
      comp += (acc - t) + cell;
    } else {
      comp += (cell - t) + acc;
    }
    acc = t;
    (*cum)[static_cast<std::size_t>(i)] = std::min(1.0, acc + comp);
  }
  const double start = f.grid_start;
  const double step = f.grid_step;
  DistributionFunction out;
  out.F = [cum, start, step, n](double x) {
    const double t = (x - start) / step;
    if (t <= 0.0) return 0.0;
    if (t >= static_cast<double>(n - 1)) return 1.0;
    const Eigen::Index i = static_cast<Eigen::Index>(std::floor(t));
    const double tau = t - static_cast<double>(i);
    const double lo = (*cum)[static_cast<std::size_t>(i)];
    const double hi = (*cum)[static_cast<std::size_t>(i + 1)];
    return std::min(1.0, lo + tau * (hi - lo));
  };
  out.support_low = f.grid_start;
  out.support_high = f.x_end();
  return out;
}

LevySamplingSpec levy_spec_for(const DistributionFunction& F, const DistributionFunction& G, int n,
                               double tol) {
  LevySamplingSpec spec;
  spec.x_lo = std::min(F.support_low, G.support_low);
  spec.x_hi = std::max(F.support_high, G.support_high);
  spec.n = n;
  spec.tol = tol;
  return spec;
}

double levy_distance(const DistributionFunction& F, const DistributionFunction& G,
                     const LevySamplingSpec& spec) {
  if (spec.n < 2 || !(spec.x_hi > spec.x_lo)) throw InvalidParameter("levy: bad sampling spec");
  const int n = spec.n;
  const double dx = (spec.x_hi - spec.x_lo) / static_cast<double>(n - 1);

  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> gs(static_cast<std::size_t>(n));
  double prev_f = -1.0;
  double prev_g = -1.0;
  for (int i = 0; i < n; ++i) {
    const double x = spec.x_lo + dx * i;
    xs[static_cast<std::size_t>(i)] = x;
    const double fx = F.F(x);
    const double gx = G.F(x);
    if (fx < prev_f - 1e-10 || gx < prev_g - 1e-10) {
      throw NonMonotoneCDF("levy: sampled CDF decreases");
    }
    prev_f = fx;
    prev_g = gx;
    gs[static_cast<std::size_t>(i)] = gx;
  }

  const auto envelope_ok = [&](double eps) {
    for (int i = 0; i < n; ++i) {
      const double gx = gs[static_cast<std::size_t>(i)];
      const double x = xs[static_cast<std::size_t>(i)];
      if (gx > F.F(x + eps) + eps) return false;
      if (gx < F.F(x - eps) - eps) return false;
    }
    return true;
  };

  double lo = 0.0;
  double hi = 1.0;  // eps = 1 always satisfies the envelope
  if (envelope_ok(0.0)) return 0.0;
  while (hi - lo > spec.tol) {
    const double mid = 0.5 * (lo + hi);
    if (envelope_ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace epilab
