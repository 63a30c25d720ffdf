#include "epilab/entropy.hpp"

#include <cmath>
#include <limits>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"

namespace epilab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_normalized(const GridDensity& f) {
  const double m = mass(f);
  if (std::abs(m - 1.0) > 1e-6) {
    throw NotNormalized("functional on a density with mass " + std::to_string(m));
  }
}

double entropy_of_values(const Eigen::ArrayXd& v, double dx) {
  Eigen::ArrayXd terms(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) terms[i] = xlogx(v[i]);
  return -trapezoid(terms, dx);
}

// Every-other-point coarsening on the same window (keeps the last point
// when the count is odd; the half-cell window change is irrelevant for a
// diagnostic gap).
Eigen::ArrayXd coarsen(const Eigen::ArrayXd& v) {
  const Eigen::Index m = (v.size() + 1) / 2;
  Eigen::ArrayXd out(m);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = v[2 * i];
  return out;
}

double fisher_of_values(const Eigen::ArrayXd& v, double dx) {
  const Eigen::Index n = v.size();
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] <= kDensityFloor) continue;
    double d;
    if (i == 0) {
      d = (v[1] - v[0]) / dx;
    } else if (i == n - 1) {
      d = (v[n - 1] - v[n - 2]) / dx;
    } else {
      d = (v[i + 1] - v[i - 1]) / (2.0 * dx);
    }
    terms[i] = d * d / v[i];
  }
  return trapezoid(terms, dx);
}

bool has_jump_cells(const Eigen::ArrayXd& v, double dx) {
  const double vmax = v.maxCoeff();
  const double threshold = 10.0 * dx * vmax;
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
    if (std::abs(v[i + 1] - v[i]) > threshold) return true;
  }
  return false;
}

}  // namespace

FunctionalEstimate differential_entropy(const GridDensity& f) {
  check_normalized(f);
  FunctionalEstimate est;
  est.value = entropy_of_values(f.values, f.grid_step);
  est.refinement_gap = std::abs(est.value - entropy_of_values(coarsen(f.values), 2.0 * f.grid_step));
  est.tail_mass_dropped = f.tail_mass_dropped;
  return est;
}

FunctionalEstimate differential_entropy(const AnalyticDensity& d, Eigen::Index n_points) {
  if (const auto h = closed_form_entropy(d)) {
    return FunctionalEstimate{*h, 0.0, 0.0, false};
  }
  return differential_entropy(render_auto(d, n_points));
}

FunctionalEstimate fisher_information(const GridDensity& f) {
  check_normalized(f);
  FunctionalEstimate est;
  est.tail_mass_dropped = f.tail_mass_dropped;
  if (has_jump_cells(f.values, f.grid_step)) {
    // Not absolutely continuous at this resolution: I(X) = infinity.
    est.value = kInf;
    est.jump_warning = true;
    return est;
  }
  est.value = fisher_of_values(f.values, f.grid_step);
  est.refinement_gap = std::abs(est.value - fisher_of_values(coarsen(f.values), 2.0 * f.grid_step));
  return est;
}

FunctionalEstimate fisher_information(const AnalyticDensity& d, Eigen::Index n_points) {
  if (const auto fi = closed_form_fisher(d)) {
    FunctionalEstimate est;
    est.value = *fi;
    est.jump_warning = std::isinf(*fi);
    return est;
  }
  return fisher_information(render_auto(d, n_points));
}

FunctionalEstimate relative_entropy(const GridDensity& f, const GridDensity& g) {
  if (f.n() != g.n() ||
      std::abs(f.grid_step - g.grid_step) > 1e-12 * std::max(f.grid_step, g.grid_step) ||
      std::abs(f.grid_start - g.grid_start) > 1e-9 * std::max(1.0, std::abs(f.grid_start))) {
    throw GridMismatch("relative_entropy: inputs must share a grid");
  }
  check_normalized(f);
  check_normalized(g);
  FunctionalEstimate est;
  est.tail_mass_dropped = f.tail_mass_dropped + g.tail_mass_dropped;
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(f.n());
  for (Eigen::Index i = 0; i < f.n(); ++i) {
    const double fi = f.values[i];
    if (fi <= kDensityFloor) continue;
    const double gi = g.values[i];
    if (gi <= kDensityFloor) {
      est.value = kInf;
      return est;
    }
    terms[i] = fi * std::log(fi / gi);
  }
  double v = trapezoid(terms, f.grid_step);
  if (v < 0.0 && v > -1e-9) v = 0.0;  // clipped Gibbs
  est.value = v;
  est.refinement_gap = 0.0;
  return est;
}

double discrete_entropy(const IntegerPmf& p) {
  Eigen::ArrayXd terms(p.n());
  for (Eigen::Index i = 0; i < p.n(); ++i) terms[i] = xlogx(p.probs[i]);
  return -neumaier_sum(terms);
}

double discrete_relative_entropy(const IntegerPmf& p, const IntegerPmf& q) {
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(p.n());
  for (Eigen::Index i = 0; i < p.n(); ++i) {
    const double pi = p.probs[i];
    if (pi <= 0.0) continue;
    const double qi = q.at(p.k_min + static_cast<long>(i));
    if (qi <= 0.0) return std::numeric_limits<double>::infinity();
    terms[i] = pi * std::log(pi / qi);
  }
  double v = neumaier_sum(terms);
  if (v < 0.0 && v > -1e-12) v = 0.0;
  return v;
}

}  // namespace epilab
