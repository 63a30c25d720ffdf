#include "epilab/heat_flow.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "epilab/analytic_density.hpp"
#include "epilab/distribution_function.hpp"
#include "epilab/entropy.hpp"
#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

namespace epilab {

namespace {

// Kernel for N(0, t) sampled on the step of f, half-width w.
GridDensity gaussian_kernel(double step, double t, double halfwidth) {
  const long m = std::max<long>(static_cast<long>(std::ceil(halfwidth / step)), 4);
  const Eigen::Index n = 2 * m + 1;
  Eigen::ArrayXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(m)) * step;
    v[i] = normal_pdf(x, 0.0, t);
  }
  return make_grid_density(-static_cast<double>(m) * step, step, std::move(v));
}

}  // namespace

GridDensity gaussian_smooth(const GridDensity& f, double t) {
  return gaussian_smooth(f, t, 8.0 * std::sqrt(t));
}

GridDensity gaussian_smooth(const GridDensity& f, double t, double kernel_halfwidth) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidParameter("gaussian_smooth: t must be > 0");
  return convolve(f, gaussian_kernel(f.grid_step, t, kernel_halfwidth));
}

std::vector<GridDensity> gaussian_smooth_multi(const GridDensity& f, const std::vector<double>& ts,
                                               double kernel_halfwidth) {
  const double step = f.grid_step;
  const long m = std::max<long>(static_cast<long>(std::ceil(kernel_halfwidth / step)), 4);
  const Eigen::Index nk = 2 * m + 1;
  const std::size_t nc = static_cast<std::size_t>(f.n() + nk - 1);
  const std::size_t nfft = next_pow2(static_cast<std::size_t>(f.n() + nk));

  std::vector<std::complex<double>> pf(nfft);
  for (Eigen::Index i = 0; i < f.n(); ++i) pf[static_cast<std::size_t>(i)] = f.values[i];
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> ff;
  fft.fwd(ff, pf);

  std::vector<GridDensity> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!(t > 0.0)) throw InvalidParameter("gaussian_smooth_multi: t must be > 0");
    const GridDensity kern = gaussian_kernel(step, t, kernel_halfwidth);
    std::vector<std::complex<double>> pk(nfft);
    for (Eigen::Index i = 0; i < kern.n(); ++i) pk[static_cast<std::size_t>(i)] = kern.values[i];
    std::vector<std::complex<double>> fk;
    fft.fwd(fk, pk);
    for (std::size_t i = 0; i < nfft; ++i) fk[i] = ff[i] * fk[i];
    std::vector<std::complex<double>> conv;
    fft.inv(conv, fk);
    Eigen::ArrayXd v(static_cast<Eigen::Index>(nc));
    for (std::size_t i = 0; i < nc; ++i) {
      const double x = conv[i].real() * step;
      v[static_cast<Eigen::Index>(i)] = x > 0.0 ? x : 0.0;
    }
    out.push_back(make_grid_density(f.grid_start + kern.grid_start, step, std::move(v),
                                    f.tail_mass_dropped));
  }
  return out;
}

GridDensity perturb(const GridDensity& f, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("perturb: t must be in [0,1]");
  if (t == 1.0) return f;
  if (t == 0.0) {
    const double step = f.grid_step;
    const long m = static_cast<long>(std::ceil(9.5 / step));
    const Eigen::Index n = 2 * m + 1;
    Eigen::ArrayXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v[i] = normal_pdf((static_cast<double>(i) - static_cast<double>(m)) * step, 0.0, 1.0);
    }
    return make_grid_density(-static_cast<double>(m) * step, step, std::move(v));
  }
  return gaussian_smooth(rescale(f, std::sqrt(t)), 1.0 - t);
}

double heat_equation_residual(const GridDensity& f, double t, double dt) {
  if (!(dt > 0.0) || !(t - dt > 0.0)) throw InvalidParameter("heat residual: need t - dt > 0");
  const auto g = gaussian_smooth_multi(f, {t - dt, t, t + dt}, 8.0 * std::sqrt(t + dt));
  const auto& gm = g[0].values;
  const auto& gc = g[1].values;
  const auto& gp = g[2].values;
  const double dx = f.grid_step;
  double worst = 0.0;
  for (Eigen::Index i = 1; i + 1 < gc.size(); ++i) {
    const double dt_term = (gp[i] - gm[i]) / (2.0 * dt);
    const double dxx = (gc[i + 1] - 2.0 * gc[i] + gc[i - 1]) / (dx * dx);
    worst = std::max(worst, std::abs(dt_term - 0.5 * dxx));
  }
  return worst;
}

double debruijn_residual(const GridDensity& f, double t, double dt) {
  if (!(dt > 0.0) || !(t - dt > 0.0)) throw InvalidParameter("debruijn residual: need t - dt > 0");
  const auto g = gaussian_smooth_multi(f, {t - dt, t, t + dt}, 8.0 * std::sqrt(t + dt));
  const double h_minus = differential_entropy(g[0]).value;
  const double h_plus = differential_entropy(g[2]).value;
  const double fisher = fisher_information(g[1]).value;
  return std::abs((h_plus - h_minus) / (2.0 * dt) - 0.5 * fisher);
}

std::vector<ZeroLimitRow> debruijn_zero_limit(const GridDensity& f, const std::vector<double>& ts,
                                              std::optional<double> h_at_zero) {
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] < ts[i - 1])) throw InvalidParameter("zero limit: t sequence must decrease");
  }
  std::vector<ZeroLimitRow> rows(ts.size());
  parallel_for(static_cast<std::ptrdiff_t>(ts.size()), [&](std::ptrdiff_t i) {
    const GridDensity g = gaussian_smooth(f, ts[static_cast<std::size_t>(i)]);
    rows[static_cast<std::size_t>(i)].t = ts[static_cast<std::size_t>(i)];
    rows[static_cast<std::size_t>(i)].entropy = differential_entropy(g).value;
    rows[static_cast<std::size_t>(i)].half_fisher = 0.5 * fisher_information(g).value;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 < rows.size()) {
      rows[i].dh_forward = (rows[i].entropy - rows[i + 1].entropy) / (ts[i] - ts[i + 1]);
    } else if (h_at_zero) {
      rows[i].dh_forward = (rows[i].entropy - *h_at_zero) / ts[i];
    } else {
      rows[i].dh_forward = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rows;
}

GridDensity epi_mix(const GridDensity& f, const GridDensity& g, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidParameter("epi mix: lambda must be in (0,1)");
  const double step = std::min(f.grid_step, g.grid_step);
  const GridDensity fa = rescale(f, std::sqrt(lambda), step);
  const GridDensity gb = rescale(g, std::sqrt(1.0 - lambda), step);
  return convolve(fa, gb);
}

DeficitReport epi_deficit(const GridDensity& f, const GridDensity& g, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidParameter("epi_deficit: lambda in (0,1)");
  DeficitReport r;
  r.lambda = lambda;
  r.h_x = differential_entropy(f).value;
  r.h_y = differential_entropy(g).value;
  const bool same_step =
      std::abs(f.grid_step - g.grid_step) <= 1e-12 * std::max(f.grid_step, g.grid_step);
  if (lambda == 0.5 && same_step) {
    // h((X+Y)/sqrt 2) = h(X+Y) - (1/2) log 2, no resampling involved.
    r.h_mix = differential_entropy(convolve(f, g)).value - 0.5 * kLog2;
  } else {
    r.h_mix = differential_entropy(epi_mix(f, g, lambda)).value;
  }
  r.deficit = r.h_mix - lambda * r.h_x - (1.0 - lambda) * r.h_y;
  return r;
}

HeatTrajectory deficit_monotonicity(const GridDensity& f, const GridDensity& g, double lambda,
                                    const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidParameter("trajectory: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] <= 1.0)) {
      throw InvalidParameter("trajectory: t grid must lie in (0,1]");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw InvalidParameter("trajectory: t grid must increase");
    }
  }
  const std::size_t n = t_grid.size();
  HeatTrajectory tr;
  tr.lambda = lambda;
  tr.times = t_grid;
  tr.h_x.resize(n);
  tr.h_y.resize(n);
  tr.h_mix.resize(n);
  tr.fisher_x.resize(n);
  tr.fisher_y.resize(n);
  tr.fisher_mix.resize(n);
  tr.delta.resize(n);
  tr.delta_prime_numeric.assign(n, 0.0);
  tr.delta_prime_formula.resize(n);

  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    const double t = t_grid[i];
    const GridDensity xt = perturb(f, t);
    const GridDensity yt = perturb(g, t);
    const GridDensity vt = epi_mix(xt, yt, lambda);
    tr.h_x[i] = differential_entropy(xt).value;
    tr.h_y[i] = differential_entropy(yt).value;
    tr.h_mix[i] = differential_entropy(vt).value;
    tr.fisher_x[i] = fisher_information(xt).value;
    tr.fisher_y[i] = fisher_information(yt).value;
    tr.fisher_mix[i] = fisher_information(vt).value;
    tr.delta[i] = tr.h_mix[i] - lambda * tr.h_x[i] - (1.0 - lambda) * tr.h_y[i];
    tr.delta_prime_formula[i] =
        (lambda * tr.fisher_x[i] + (1.0 - lambda) * tr.fisher_y[i] - tr.fisher_mix[i]) / (2.0 * t);
  });

  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) break;
    if (i == 0) {
      tr.delta_prime_numeric[i] = (tr.delta[1] - tr.delta[0]) / (t_grid[1] - t_grid[0]);
    } else if (i == n - 1) {
      tr.delta_prime_numeric[i] = (tr.delta[i] - tr.delta[i - 1]) / (t_grid[i] - t_grid[i - 1]);
    } else {
      // 3-point derivative on a non-uniform grid.
      const double dm = t_grid[i] - t_grid[i - 1];
      const double dp = t_grid[i + 1] - t_grid[i];
      tr.delta_prime_numeric[i] = (tr.delta[i + 1] * dm * dm - tr.delta[i - 1] * dp * dp +
                                   tr.delta[i] * (dp * dp - dm * dm)) /
                                  (dm * dp * (dm + dp));
    }
  }
  return tr;
}

double submodularity_gap(const GridDensity& fx, const GridDensity& fy, const GridDensity& fz) {
  const GridDensity xy = convolve(fx, fy);
  const GridDensity yz = convolve(fy, fz);
  const GridDensity xyz = convolve(xy, fz);
  return differential_entropy(xy).value + differential_entropy(yz).value -
         differential_entropy(fy).value - differential_entropy(xyz).value;
}

namespace {

AnalyticDensity symmetric_mixture(double a) {
  if (a == 0.0) return Gaussian{0.0, 1.0};
  GaussianMixture m;
  m.weights = {0.5, 0.5};
  m.components = {Gaussian{-a, 1.0 - a * a}, Gaussian{a, 1.0 - a * a}};
  return m;
}

double best_gaussian_levy(const AnalyticDensity& mix) {
  const DistributionFunction fm = make_cdf(mix);
  const auto dist = [&](double s2) {
    const DistributionFunction fg = make_cdf(AnalyticDensity{Gaussian{0.0, s2}});
    auto spec = levy_spec_for(fm, fg, 8192, 1e-10);
    return levy_distance(fm, fg, spec);
  };
  // Coarse scan over the variance, then golden-section refinement.
  double best_s2 = 1.0;
  double best = dist(1.0);
  for (int i = 0; i <= 40; ++i) {
    const double s2 = 0.6 + 0.8 * static_cast<double>(i) / 40.0;
    const double v = dist(s2);
    if (v < best) {
      best = v;
      best_s2 = s2;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_s2 - 0.05, hi = best_s2 + 0.05;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace

std::vector<WeakStabilityRow> weak_stability_demo(const std::vector<double>& a_sequence,
                                                  Eigen::Index n_points) {
  std::vector<WeakStabilityRow> rows(a_sequence.size());
  parallel_for(static_cast<std::ptrdiff_t>(a_sequence.size()), [&](std::ptrdiff_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    const double a = a_sequence[i];
    if (!(a >= 0.0 && a < 1.0)) throw InvalidParameter("weak demo: a must be in [0,1)");
    rows[i].a = a;
    const AnalyticDensity mix = symmetric_mixture(a);
    const GridDensity fa = render(mix, {-10.0, 10.0}, n_points);
    rows[i].deficit = epi_deficit(fa, fa, 0.5).deficit;
    rows[i].levy_to_gaussian = a == 0.0 ? 0.0 : best_gaussian_levy(mix);
  });
  return rows;
}

std::string trajectory_csv(const HeatTrajectory& tr) {
  std::string out = "t,h_x,h_y,h_mix,I_x,I_y,I_mix,delta,dprime_num,dprime_formula\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out += format_double(tr.times[i]);
    out += ',';
    out += format_double(tr.h_x[i]);
    out += ',';
    out += format_double(tr.h_y[i]);
    out += ',';
    out += format_double(tr.h_mix[i]);
    out += ',';
    out += format_double(tr.fisher_x[i]);
    out += ',';
    out += format_double(tr.fisher_y[i]);
    out += ',';
    out += format_double(tr.fisher_mix[i]);
    out += ',';
    out += format_double(tr.delta[i]);
    out += ',';
    out += format_double(tr.delta_prime_numeric[i]);
    out += ',';
    out += format_double(tr.delta_prime_formula[i]);
    out += '\n';
  }
  return out;
}

}  // namespace epilab
