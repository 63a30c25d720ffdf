#include "epilab/stability.hpp"

#include <cmath>
#include <limits>

#include "epilab/analytic_density.hpp"
#include "epilab/entropy.hpp"
#include "epilab/errors.hpp"
#include "epilab/heat_flow.hpp"
#include "epilab/isoperimetry.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

namespace epilab {

double kl_to_discretized_gaussian(const IntegerPmf& p) {
  if (!(p.variance > 0.0)) return std::numeric_limits<double>::infinity();
  const double mu = p.mean;
  const double s2 = p.variance;
  Eigen::ArrayXd terms = Eigen::ArrayXd::Zero(p.n());
  for (Eigen::Index i = 0; i < p.n(); ++i) {
    const double pi = p.probs[i];
    if (pi <= 0.0) continue;
    const long k = p.k_min + static_cast<long>(i);
    terms[i] = pi * (std::log(pi) - discretized_gaussian_log_pmf(mu, s2, k));
  }
  double v = neumaier_sum(terms);
  if (v < 0.0 && v > -1e-12) v = 0.0;
  return v;
}

DiscreteStabilityReport theorem9_report(const IntegerPmf& p, double c2_budget) {
  const auto cert = check_log_concave(p);
  if (!cert.is_log_concave) throw NotLogConcave("theorem9: input is not log-concave");
  DiscreteStabilityReport r;
  r.sigma = std::sqrt(p.variance);
  r.c2_budget = c2_budget;
  r.scope_warning = r.sigma < kSigmaGate;
  r.kl_to_dgauss = kl_to_discretized_gaussian(p);
  r.tao_deficit = tao_deficit(p);
  r.c1_term = kStabilityC1 * r.tao_deficit;
  const double rate = std::log(r.sigma) / r.sigma;  // sigma > 1 in all in-scope uses
  r.required_c2 = rate > 0.0 ? std::max(0.0, (r.kl_to_dgauss - r.c1_term) / rate) : 0.0;
  r.passes_with_budget = r.kl_to_dgauss <= r.c1_term + c2_budget * rate;
  return r;
}

ContinuousStabilityReport continuous_stability_report(const GridDensity& f, double poincare_upper) {
  if (!(poincare_upper > 0.0) || !std::isfinite(poincare_upper)) {
    throw InvalidParameter("continuous stability: need a finite positive Poincare upper bound");
  }
  ContinuousStabilityReport r;
  r.poincare_upper = poincare_upper;
  r.variance = variance(f);
  // D(X) against the moment-matched Gaussian reduces to the exact identity
  // (1/2) log(2 pi e sigma^2) - h(X); no reference grid (whose window
  // truncation would bias the divergence) is involved.
  r.kl_to_gaussian =
      0.5 * (kLog2PiE + std::log(r.variance)) - differential_entropy(f).value;
  if (r.kl_to_gaussian < 0.0 && r.kl_to_gaussian > -1e-9) r.kl_to_gaussian = 0.0;
  r.deficit_half = epi_deficit(f, f, 0.5).deficit;
  const double s2 = r.variance;
  r.bbn_bound = (2.0 * poincare_upper + 2.0 * s2) / s2 * r.deficit_half;
  r.km_bound = (2.0 * poincare_upper + s2) / s2 * r.deficit_half;
  return r;
}

double grid_poincare_cheeger_upper(const GridDensity& f) {
  // Cell masses form a pmf on the integer lattice; X is (up to translation)
  // step * (lattice variable + U). Is scales by 1/step, C_P by step^2.
  const Eigen::Index n = f.n() - 1;
  Eigen::ArrayXd cells(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cells[i] = 0.5 * (f.values[i] + f.values[i + 1]) * f.grid_step;
  }
  const IntegerPmf lattice = make_pmf(0, std::move(cells));
  const auto d = smooth_with_uniform(lattice);
  const auto iso = isoperimetric_constant(d);
  return f.grid_step * f.grid_step * iso.cheeger_upper;
}

std::string to_json(const DiscreteStabilityReport& r, const std::string& input_descriptor) {
  JsonWriter w;
  w.begin_object();
  w.key("input").string(input_descriptor);
  w.key("sigma").number(r.sigma);
  w.key("kl_to_dgauss").number(r.kl_to_dgauss);
  w.key("tao_deficit").number(r.tao_deficit);
  w.key("c1_term").number(r.c1_term);
  w.key("required_c2").number(r.required_c2);
  w.key("c2_budget").number(r.c2_budget);
  w.key("passes_with_budget").boolean(r.passes_with_budget);
  w.key("scope_warning").boolean(r.scope_warning);
  w.end_object();
  return w.str();
}

std::string to_json(const ContinuousStabilityReport& r, const std::string& input_descriptor) {
  JsonWriter w;
  w.begin_object();
  w.key("input").string(input_descriptor);
  w.key("variance").number(r.variance);
  w.key("poincare_upper").number(r.poincare_upper);
  w.key("deficit_half").number(r.deficit_half);
  w.key("kl_to_gaussian").number(r.kl_to_gaussian);
  w.key("bbn_bound").number(r.bbn_bound);
  w.key("km_bound").number(r.km_bound);
  w.end_object();
  return w.str();
}

}  // namespace epilab
