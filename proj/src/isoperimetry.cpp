#include "epilab/isoperimetry.hpp"

#include <cmath>
#include <limits>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

namespace epilab {

namespace {

constexpr double kZeroHeight = 1e-15;

struct TrimmedView {
  Eigen::Index first = 0;  // first positive cell
  Eigen::Index last = 0;   // last positive cell
};

TrimmedView trim(const PiecewiseConstantDensity& d) {
  Eigen::Index first = -1, last = -1;
  for (Eigen::Index i = 0; i < d.cells(); ++i) {
    if (d.heights[i] >= kZeroHeight) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) throw InvalidParameter("isoperimetry: empty density");
  for (Eigen::Index i = first; i <= last; ++i) {
    if (d.heights[i] < kZeroHeight) {
      throw DisconnectedSupport("isoperimetry: interior cell with zero height at k=" +
                                std::to_string(d.k_min + static_cast<long>(i)));
    }
  }
  return {first, last};
}

}  // namespace

PiecewiseConstantDensity smooth_with_uniform(const IntegerPmf& p) {
  PiecewiseConstantDensity d;
  d.k_min = p.k_min;
  d.heights = p.probs;
  d.cdf_at_integers.assign(static_cast<std::size_t>(p.n()) + 1, 0.0);
  double acc = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < p.n(); ++i) {
    const double x = p.probs[i];
    const double t = acc + x;
    if (std::abs(acc) >= std::abs(x)) {
      comp += (acc - t) + x;
    } else {
      comp += (x - t) + acc;
    }
    acc = t;
    d.cdf_at_integers[static_cast<std::size_t>(i) + 1] = acc + comp;
  }
  return d;
}

double pcd_mean(const PiecewiseConstantDensity& d) {
  Eigen::ArrayXd terms(d.cells());
  for (Eigen::Index i = 0; i < d.cells(); ++i) {
    const double k = static_cast<double>(d.k_min + static_cast<long>(i));
    terms[i] = d.heights[i] * (k + 0.5);
  }
  return neumaier_sum(terms);
}

double pcd_variance(const PiecewiseConstantDensity& d) {
  const double m = pcd_mean(d);
  Eigen::ArrayXd terms(d.cells());
  for (Eigen::Index i = 0; i < d.cells(); ++i) {
    const double k = static_cast<double>(d.k_min + static_cast<long>(i));
    // ∫_k^{k+1} x^2 dx = k^2 + k + 1/3
    terms[i] = d.heights[i] * (k * k + k + 1.0 / 3.0);
  }
  return neumaier_sum(terms) - m * m;
}

IsoperimetryReport isoperimetric_constant(const PiecewiseConstantDensity& d) {
  const auto view = trim(d);
  double best = std::numeric_limits<double>::infinity();
  long best_cell = 0;
  double best_point = 0.0;
  for (Eigen::Index i = view.first; i <= view.last; ++i) {
    const double h = d.heights[i];
    const double f_lo = d.cdf_at_integers[static_cast<std::size_t>(i)];
    const double f_hi = d.cdf_at_integers[static_cast<std::size_t>(i) + 1];
    const double k = static_cast<double>(d.k_min + static_cast<long>(i));
    double cell_max;
    double at;
    if (f_hi <= 0.5) {
      cell_max = f_hi;       // F increasing: peak at the right endpoint
      at = k + 1.0;
    } else if (f_lo >= 0.5) {
      cell_max = 1.0 - f_lo; // 1-F decreasing: peak at the left endpoint
      at = k;
    } else {
      cell_max = 0.5;        // median crossing, exact
      at = k + (0.5 - f_lo) / h;
    }
    if (!(cell_max > 0.0)) continue;  // numerically empty edge
    const double ratio = h / cell_max;
    if (ratio < best) {
      best = ratio;
      best_cell = d.k_min + static_cast<long>(i);
      best_point = at;
    }
  }
  IsoperimetryReport r;
  r.iso_constant = best;
  r.argmin_cell = best_cell;
  r.argmin_point = best_point;
  r.cheeger_upper = cheeger_poincare_upper(best);
  return r;
}

double cheeger_poincare_upper(double iso_constant) {
  if (!(iso_constant > 0.0)) throw InvalidParameter("cheeger: Is must be positive");
  return 4.0 / (iso_constant * iso_constant);
}

namespace {

// Exact per-cell integrals of g and g^2 and (g')^2 for the wave family
// g = cos(c(x - x0)) or sin(c(x - x0)) against a piecewise constant density.
struct WaveMoments {
  double eg = 0.0, eg2 = 0.0, egp2 = 0.0;
};

WaveMoments wave_moments(const PiecewiseConstantDensity& d, double c, double x0, bool use_cos,
                         Eigen::Index first, Eigen::Index last) {
  WaveMoments w;
  Eigen::ArrayXd eg(last - first + 1), eg2(last - first + 1), egp2(last - first + 1);
  for (Eigen::Index i = first; i <= last; ++i) {
    const double h = d.heights[i];
    const double a = static_cast<double>(d.k_min + static_cast<long>(i)) - x0;
    const double b = a + 1.0;
    // ∫ cos(ct) dt = [sin(ct)/c]; ∫ cos^2 = t/2 + sin(2ct)/(4c)
    const double s_int = (std::sin(c * b) - std::sin(c * a)) / c;
    const double c_int = -(std::cos(c * b) - std::cos(c * a)) / c;
    const double cos2_int = 0.5 * (b - a) + (std::sin(2.0 * c * b) - std::sin(2.0 * c * a)) / (4.0 * c);
    const double sin2_int = (b - a) - cos2_int;
    const Eigen::Index j = i - first;
    if (use_cos) {
      eg[j] = h * s_int;
      eg2[j] = h * cos2_int;
      egp2[j] = h * c * c * sin2_int;  // g' = -c sin
    } else {
      eg[j] = h * c_int;
      eg2[j] = h * sin2_int;
      egp2[j] = h * c * c * cos2_int;  // g' = c cos
    }
  }
  w.eg = neumaier_sum(eg);
  w.eg2 = neumaier_sum(eg2);
  w.egp2 = neumaier_sum(egp2);
  return w;
}

}  // namespace

double rayleigh_lower_bound(const PiecewiseConstantDensity& d) {
  const auto view = trim(d);
  const Eigen::Index first = view.first, last = view.last;
  double best = 0.0;

  // g(x) = x: Var = sigma^2 of the density, E[(g')^2] = 1.
  best = std::max(best, pcd_variance(d));

  // g(x) = x^2: exact raw moments per cell.
  {
    Eigen::ArrayXd m2(last - first + 1), m4(last - first + 1);
    for (Eigen::Index i = first; i <= last; ++i) {
      const double h = d.heights[i];
      const double k = static_cast<double>(d.k_min + static_cast<long>(i));
      const double b = k + 1.0;
      m2[i - first] = h * (b * b * b - k * k * k) / 3.0;
      m4[i - first] = h * (std::pow(b, 5) - std::pow(k, 5)) / 5.0;
    }
    const double eg = neumaier_sum(m2);
    const double eg2 = neumaier_sum(m4);
    const double egp2 = 4.0 * eg;  // E[(2x)^2] = 4 E[x^2]
    if (egp2 > 0.0) best = std::max(best, (eg2 - eg * eg) / egp2);
  }

  // Waves scaled to the support.
  const double x0 = static_cast<double>(d.k_min + static_cast<long>(first));
  const double width = static_cast<double>(last - first + 1);
  for (int ell = 1; ell <= 3; ++ell) {
    const double c = kPi * static_cast<double>(ell) / width;
    for (bool use_cos : {true, false}) {
      const auto w = wave_moments(d, c, x0, use_cos, first, last);
      if (w.egp2 > 1e-300) {
        best = std::max(best, (w.eg2 - w.eg * w.eg) / w.egp2);
      }
    }
  }

  // Piecewise-linear hats centered at each interior integer.
  for (Eigen::Index i = first + 1; i <= last; ++i) {
    const double h_left = d.heights[i - 1];
    const double h_right = d.heights[i];
    // g rises 0..1 on the left cell, falls 1..0 on the right cell.
    const double eg = 0.5 * (h_left + h_right);
    const double eg2 = (h_left + h_right) / 3.0;
    const double egp2 = h_left + h_right;
    if (egp2 > 1e-300) best = std::max(best, (eg2 - eg * eg) / egp2);
  }
  return best;
}

IsoperimetryReport isoperimetry_report(const IntegerPmf& p) {
  const auto d = smooth_with_uniform(p);
  IsoperimetryReport r = isoperimetric_constant(d);
  r.rayleigh_lower = rayleigh_lower_bound(d);
  r.sigma2 = p.variance;
  return r;
}

double proof_chain_margin(const PiecewiseConstantDensity& d, double sigma) {
  const auto view = trim(d);
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = view.first; i <= view.last; ++i) {
    const double h = d.heights[i];
    const double f_lo = d.cdf_at_integers[static_cast<std::size_t>(i)];
    const double f_hi = d.cdf_at_integers[static_cast<std::size_t>(i) + 1];
    // Left endpoint of cell i (skip the support edge a).
    if (i > view.first) {
      worst = std::max(worst, std::min(f_lo, 1.0 - f_lo) - 331.0 * sigma * h);
    }
    // Median crossing inside the cell.
    if (f_lo < 0.5 && f_hi > 0.5) {
      worst = std::max(worst, 0.5 - 331.0 * sigma * h);
    }
  }
  return worst;
}

Prop10Report verify_prop10(const IntegerPmf& p) {
  const auto cert = check_log_concave(p);
  if (!cert.is_log_concave) throw NotLogConcave("prop10: input is not log-concave");
  if (p.variance < 4.0 - 1e-9) throw PreconditionUnmet("prop10: sigma^2 >= 4 required");
  const auto d = smooth_with_uniform(p);
  const auto iso = isoperimetric_constant(d);
  Prop10Report r;
  r.sigma2 = p.variance;
  r.iso_constant = iso.iso_constant;
  r.cheeger_upper = iso.cheeger_upper;
  r.budget = 438244.0 * p.variance;
  r.passes = r.cheeger_upper <= r.budget;
  r.observed_ratio = r.cheeger_upper / p.variance;
  r.proof_chain_margin = proof_chain_margin(d, std::sqrt(p.variance));
  return r;
}

std::string to_json(const IsoperimetryReport& r, const std::string& input_descriptor) {
  JsonWriter w;
  w.begin_object();
  w.key("input").string(input_descriptor);
  w.key("iso_constant").number(r.iso_constant);
  w.key("argmin_cell").integer(r.argmin_cell);
  w.key("argmin_point").number(r.argmin_point);
  w.key("cheeger_upper").number(r.cheeger_upper);
  w.key("rayleigh_lower").number(r.rayleigh_lower);
  w.key("sigma2").number(r.sigma2);
  w.end_object();
  return w.str();
}

}  // namespace epilab
