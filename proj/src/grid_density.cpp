#include "epilab/grid_density.hpp"

#include <algorithm>
#include <cmath>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

#include "json.hpp"

namespace epilab {

namespace {

void normalize_in_place(GridDensity& f) {
  const double m = trapezoid(f.values, f.grid_step);
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw InvalidParameter("grid density mass is not positive/finite");
  }
  f.values /= m;
}

double catmull_rom(double p0, double p1, double p2, double p3, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return 0.5 * (2.0 * p1 + (-p0 + p2) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t3);
}

}  // namespace

GridDensity make_grid_density(double grid_start, double grid_step, Eigen::ArrayXd values,
                              double tail_mass_dropped) {
  if (!std::isfinite(grid_start) || !std::isfinite(grid_step) || grid_step <= 0.0) {
    throw InvalidParameter("grid density: grid_step must be positive and finite");
  }
  if (values.size() < 8) {
    throw InvalidParameter("grid density: need at least 8 grid points");
  }
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidParameter("grid density: non-finite value");
    if (values[i] < 0.0) {
      if (values[i] < -1e-12) throw InvalidParameter("grid density: negative value");
      values[i] = 0.0;
    }
  }
  GridDensity f{grid_start, grid_step, std::move(values), tail_mass_dropped};
  normalize_in_place(f);
  return f;
}

double mass(const GridDensity& f) { return trapezoid(f.values, f.grid_step); }

double mean(const GridDensity& f) { return moment(f, 1, false); }

double variance(const GridDensity& f) {
  const double m1 = moment(f, 1, false);
  const double m2 = moment(f, 2, false);
  return m2 - m1 * m1;
}

double moment(const GridDensity& f, int k, bool absolute) {
  if (k < 1) throw InvalidParameter("moment: k must be >= 1");
  Eigen::ArrayXd integrand(f.n());
  for (Eigen::Index i = 0; i < f.n(); ++i) {
    const double xi = f.x(i);
    const double p = absolute ? std::pow(std::abs(xi), k) : std::pow(xi, k);
    integrand[i] = p * f.values[i];
  }
  return trapezoid(integrand, f.grid_step);
}

GridDensity convolve(const GridDensity& f, const GridDensity& g) {
  const double step = f.grid_step;
  if (std::abs(f.grid_step - g.grid_step) > 1e-12 * std::max(f.grid_step, g.grid_step)) {
    throw GridMismatch("convolve: grid steps differ");
  }
  Eigen::ArrayXd conv = fft_linear_convolve(f.values, g.values) * step;
  for (Eigen::Index i = 0; i < conv.size(); ++i) {
    if (conv[i] < 0.0) conv[i] = 0.0;  // FFT roundoff
  }
  const double dropped = f.tail_mass_dropped + g.tail_mass_dropped;
  return make_grid_density(f.grid_start + g.grid_start, step, std::move(conv), dropped);
}

double interpolate(const GridDensity& f, double x) {
  const double t = (x - f.grid_start) / f.grid_step;
  if (t < 0.0 || t > static_cast<double>(f.n() - 1)) return 0.0;
  Eigen::Index i = static_cast<Eigen::Index>(std::floor(t));
  if (i >= f.n() - 1) i = f.n() - 2;
  const double tau = t - static_cast<double>(i);
  const auto at = [&](Eigen::Index j) {
    if (j < 0) j = 0;
    if (j > f.n() - 1) j = f.n() - 1;
    return f.values[j];
  };
  const double v = catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), tau);
  return v > 0.0 ? v : 0.0;
}

GridDensity rescale(const GridDensity& f, double a) { return rescale(f, a, f.grid_step); }

GridDensity rescale(const GridDensity& f, double a, double target_step) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("rescale: factor must be positive");
  if (!(target_step > 0.0) || !std::isfinite(target_step)) {
    throw InvalidParameter("rescale: target_step must be positive");
  }
  const double step = target_step;
  const double lo = a * f.grid_start;
  const double hi = a * f.x_end();
  Eigen::Index n_out = static_cast<Eigen::Index>(std::floor((hi - lo) / step)) + 1;
  if (n_out < 8) n_out = 8;  // zero-pad degenerate supports
  Eigen::ArrayXd out(n_out);
  for (Eigen::Index j = 0; j < n_out; ++j) {
    const double x = lo + static_cast<double>(j) * step;
    out[j] = interpolate(f, x / a) / a;
  }
  return make_grid_density(lo, step, std::move(out), f.tail_mass_dropped);
}

std::string to_json(const GridDensity& f) {
  JsonWriter w;
  w.begin_object();
  w.key("grid_start").number(f.grid_start);
  w.key("grid_step").number(f.grid_step);
  w.key("values").begin_array();
  for (Eigen::Index i = 0; i < f.n(); ++i) w.number(f.values[i]);
  w.end_array();
  w.end_object();
  return w.str();
}

GridDensity grid_density_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const double start = j.at("grid_start").get<double>();
  const double step = j.at("grid_step").get<double>();
  const auto& vals = j.at("values");
  Eigen::ArrayXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (const auto& x : vals) v[i++] = x.get<double>();
  return make_grid_density(start, step, std::move(v));
}

}  // namespace epilab
