#include "epilab/analytic_density.hpp"

#include <algorithm>
#include <cmath>

#include "epilab/errors.hpp"
#include "epilab/numeric.hpp"
#include "epilab/report_io.hpp"

#include "json.hpp"

namespace epilab {

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string("non-finite parameter: ") + what);
}

// Raw moments of N(mean, var) via m_k = mean*m_{k-1} + (k-1)*var*m_{k-2}.
double gaussian_raw_moment(double mean, double var, int k) {
  double m_prev = 1.0;  // m_0
  double m_cur = mean;  // m_1
  if (k == 0) return m_prev;
  for (int j = 2; j <= k; ++j) {
    const double m_next = mean * m_cur + static_cast<double>(j - 1) * var * m_prev;
    m_prev = m_cur;
    m_cur = m_next;
  }
  return m_cur;
}

// E|Z|^k for Z ~ N(0, var): var^{k/2} 2^{k/2} Gamma((k+1)/2) / sqrt(pi).
double gaussian_central_abs_moment(double var, int k) {
  return std::pow(var, 0.5 * k) * std::exp(0.5 * k * kLog2 + std::lgamma(0.5 * (k + 1))) /
         std::sqrt(kPi);
}

double factorial(int k) { return std::exp(std::lgamma(static_cast<double>(k) + 1.0)); }

double signed_power_integral(double x, int k) {
  // Antiderivative of |x|^k: sgn(x) |x|^{k+1} / (k+1).
  const double s = x >= 0.0 ? 1.0 : -1.0;
  return s * std::pow(std::abs(x), k + 1) / static_cast<double>(k + 1);
}

double quantile_by_bisection(const AnalyticDensity& d, double p, double lo, double hi) {
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

AnalyticDensity validate(AnalyticDensity d) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          check_finite(v.mean, "mean");
          check_finite(v.variance, "variance");
          if (v.variance <= 0.0) throw InvalidParameter("gaussian variance must be > 0");
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          if (v.weights.empty() || v.weights.size() != v.components.size()) {
            throw InvalidParameter("mixture: weights/components size mismatch");
          }
          double sum = 0.0;
          for (double w : v.weights) {
            check_finite(w, "weight");
            if (w < 0.0) throw InvalidParameter("mixture weight < 0");
            sum += w;
          }
          if (std::abs(sum - 1.0) > 1e-12) throw InvalidParameter("mixture weights must sum to 1");
          for (const auto& c : v.components) {
            check_finite(c.mean, "mean");
            check_finite(c.variance, "variance");
            if (c.variance <= 0.0) throw InvalidParameter("mixture component variance must be > 0");
          }
        } else if constexpr (std::is_same_v<T, Uniform>) {
          check_finite(v.a, "a");
          check_finite(v.b, "b");
          if (!(v.b > v.a)) throw InvalidParameter("uniform requires b > a");
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          check_finite(v.location, "location");
          check_finite(v.scale, "scale");
          if (v.scale <= 0.0) throw InvalidParameter("cauchy scale must be > 0");
        } else if constexpr (std::is_same_v<T, Exponential>) {
          check_finite(v.rate, "rate");
          if (v.rate <= 0.0) throw InvalidParameter("exponential rate must be > 0");
        }
      },
      d);
  return d;
}

double pdf(const AnalyticDensity& d, double x) {
  return std::visit(
      [x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return normal_pdf(x, v.mean, v.variance);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          double s = 0.0;
          for (std::size_t i = 0; i < v.weights.size(); ++i) {
            s += v.weights[i] * normal_pdf(x, v.components[i].mean, v.components[i].variance);
          }
          return s;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          if (x < v.a || x > v.b) return 0.0;
          // Half weight exactly at the jumps: the trapezoid-exact sampling
          // of an indicator (mass and integrals stay exact on aligned grids).
          if (x == v.a || x == v.b) return 0.5 / (v.b - v.a);
          return 1.0 / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          const double u = (x - v.location) / v.scale;
          return 1.0 / (kPi * v.scale * (1.0 + u * u));
        } else {
          return x >= 0.0 ? v.rate * std::exp(-v.rate * x) : 0.0;
        }
      },
      d);
}

double cdf(const AnalyticDensity& d, double x) {
  return std::visit(
      [x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return normal_cdf((x - v.mean) / std::sqrt(v.variance));
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          double s = 0.0;
          for (std::size_t i = 0; i < v.weights.size(); ++i) {
            s += v.weights[i] *
                 normal_cdf((x - v.components[i].mean) / std::sqrt(v.components[i].variance));
          }
          return s;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          if (x <= v.a) return 0.0;
          if (x >= v.b) return 1.0;
          return (x - v.a) / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return 0.5 + std::atan((x - v.location) / v.scale) / kPi;
        } else {
          return x >= 0.0 ? -std::expm1(-v.rate * x) : 0.0;
        }
      },
      d);
}

double pdf_derivative(const AnalyticDensity& d, double x) {
  return std::visit(
      [x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return -(x - v.mean) / v.variance * normal_pdf(x, v.mean, v.variance);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          double s = 0.0;
          for (std::size_t i = 0; i < v.weights.size(); ++i) {
            const auto& c = v.components[i];
            s += v.weights[i] * (-(x - c.mean) / c.variance) * normal_pdf(x, c.mean, c.variance);
          }
          return s;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return 0.0;  // away from the jumps
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          const double u = (x - v.location) / v.scale;
          const double den = 1.0 + u * u;
          return -2.0 * u / (kPi * v.scale * v.scale * den * den);
        } else {
          return x >= 0.0 ? -v.rate * v.rate * std::exp(-v.rate * x) : 0.0;
        }
      },
      d);
}

double mean_of(const AnalyticDensity& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return v.mean;
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          double s = 0.0;
          for (std::size_t i = 0; i < v.weights.size(); ++i) s += v.weights[i] * v.components[i].mean;
          return s;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return 0.5 * (v.a + v.b);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return std::numeric_limits<double>::quiet_NaN();
        } else {
          return 1.0 / v.rate;
        }
      },
      d);
}

double variance_of(const AnalyticDensity& d) {
  return std::visit(
      [&d](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return v.variance;
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          const double m1 = mean_of(d);
          double m2 = 0.0;
          for (std::size_t i = 0; i < v.weights.size(); ++i) {
            const auto& c = v.components[i];
            m2 += v.weights[i] * (c.variance + c.mean * c.mean);
          }
          return m2 - m1 * m1;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          const double w = v.b - v.a;
          return w * w / 12.0;
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return std::numeric_limits<double>::infinity();
        } else {
          return 1.0 / (v.rate * v.rate);
        }
      },
      d);
}

double moment(const AnalyticDensity& d, int k, bool absolute) {
  if (k < 1) throw InvalidParameter("moment: k must be >= 1");
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Cauchy>) {
          // No moment of order k >= 1 exists; +infinity is the flag value.
          return std::numeric_limits<double>::infinity();
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          if (!absolute) return gaussian_raw_moment(v.mean, v.variance, k);
          if (v.mean == 0.0) return gaussian_central_abs_moment(v.variance, k);
          if (k % 2 == 0) return gaussian_raw_moment(v.mean, v.variance, k);
          return moment(render_auto(d, 1 << 15), k, true);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          const double num = absolute ? signed_power_integral(v.b, k) - signed_power_integral(v.a, k)
                                      : (std::pow(v.b, k + 1) - std::pow(v.a, k + 1)) /
                                            static_cast<double>(k + 1);
          return num / (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return factorial(k) / std::pow(v.rate, k);  // support is [0, inf): absolute == raw
        } else {
          // Mixture: raw moments are weighted component moments (even
          // absolute moments coincide with raw); odd absolute moments go
          // through quadrature on a rendered grid.
          if (!absolute || k % 2 == 0) {
            double s = 0.0;
            for (std::size_t i = 0; i < v.weights.size(); ++i) {
              const auto& c = v.components[i];
              s += v.weights[i] * gaussian_raw_moment(c.mean, c.variance, k);
            }
            return s;
          }
          return moment(render_auto(d, 1 << 15), k, true);
        }
      },
      d);
}

std::optional<double> closed_form_entropy(const AnalyticDensity& d) {
  return std::visit(
      [](const auto& v) -> std::optional<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return 0.5 * (kLog2PiE + std::log(v.variance));
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return std::log(v.b - v.a);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return std::log(4.0 * kPi * v.scale);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 - std::log(v.rate);
        } else {
          if (v.components.size() == 1) {
            return 0.5 * (kLog2PiE + std::log(v.components[0].variance));
          }
          return std::nullopt;
        }
      },
      d);
}

std::optional<double> closed_form_fisher(const AnalyticDensity& d) {
  return std::visit(
      [](const auto& v) -> std::optional<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return 1.0 / v.variance;
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return 1.0 / (2.0 * v.scale * v.scale);
        } else if constexpr (std::is_same_v<T, Uniform> || std::is_same_v<T, Exponential>) {
          // Jump densities are not absolutely continuous: I = infinity.
          return std::numeric_limits<double>::infinity();
        } else {
          if (v.components.size() == 1) return 1.0 / v.components[0].variance;
          return std::nullopt;
        }
      },
      d);
}

AnalyticDensity affine(const AnalyticDensity& d, double a, double b) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidParameter("affine: need finite a != 0, finite b");
  }
  return std::visit(
      [a, b](const auto& v) -> AnalyticDensity {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return Gaussian{a * v.mean + b, a * a * v.variance};
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          GaussianMixture out = v;
          for (auto& c : out.components) c = Gaussian{a * c.mean + b, a * a * c.variance};
          return out;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          const double lo = a * v.a + b;
          const double hi = a * v.b + b;
          return Uniform{std::min(lo, hi), std::max(lo, hi)};
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return Cauchy{a * v.location + b, std::abs(a) * v.scale};
        } else {
          if (a <= 0.0 || b != 0.0) {
            throw InvalidParameter("affine: exponential is closed only under positive scaling");
          }
          return Exponential{v.rate / a};
        }
      },
      d);
}

std::array<double, 2> default_window(const AnalyticDensity& d, double tail_mass) {
  if (!(tail_mass > 0.0) || tail_mass >= 1.0) throw InvalidParameter("tail_mass out of range");
  return std::visit(
      [&](const auto& v) -> std::array<double, 2> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          return {v.a, v.b};
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return {0.0, -std::log(tail_mass) / v.rate};
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          const double q = v.location + v.scale * std::tan(kPi * (1.0 - 0.5 * tail_mass - 0.5));
          return {2.0 * v.location - q, q};
        } else {
          double lo_b = 0.0, hi_b = 0.0;
          if constexpr (std::is_same_v<T, Gaussian>) {
            const double s = std::sqrt(v.variance);
            lo_b = v.mean - 42.0 * s;
            hi_b = v.mean + 42.0 * s;
          } else {
            lo_b = std::numeric_limits<double>::infinity();
            hi_b = -std::numeric_limits<double>::infinity();
            for (const auto& c : v.components) {
              const double s = std::sqrt(c.variance);
              lo_b = std::min(lo_b, c.mean - 42.0 * s);
              hi_b = std::max(hi_b, c.mean + 42.0 * s);
            }
          }
          const double lo = quantile_by_bisection(d, 0.5 * tail_mass, lo_b, hi_b);
          const double hi = quantile_by_bisection(d, 1.0 - 0.5 * tail_mass, lo_b, hi_b);
          return {lo, hi};
        }
      },
      validate(d));
}

GridDensity render(const AnalyticDensity& d_in, std::array<double, 2> window, Eigen::Index n_points,
                   double min_mass) {
  const AnalyticDensity d = validate(d_in);
  if (!std::isfinite(window[0]) || !std::isfinite(window[1]) || !(window[1] > window[0])) {
    throw InvalidParameter("render: bad window");
  }
  if (n_points < 8) throw InvalidParameter("render: n_points must be >= 8");
  const double captured = cdf(d, window[1]) - cdf(d, window[0]);
  if (captured < min_mass - 1e-15) {
    throw WindowTooSmall("render: window holds mass " + std::to_string(captured) +
                         " < " + std::to_string(min_mass));
  }
  const double step = (window[1] - window[0]) / static_cast<double>(n_points - 1);
  Eigen::ArrayXd v(n_points);
  for (Eigen::Index i = 0; i < n_points; ++i) {
    v[i] = pdf(d, window[0] + static_cast<double>(i) * step);
  }
  return make_grid_density(window[0], step, std::move(v), std::max(0.0, 1.0 - captured));
}

GridDensity render_auto(const AnalyticDensity& d, Eigen::Index n_points, double tail_mass) {
  const auto w = default_window(d, tail_mass);
  return render(d, w, n_points, 1.0 - 2.0 * tail_mass);
}

std::string to_json(const AnalyticDensity& d) {
  JsonWriter w;
  std::visit(
      [&w](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        w.begin_object();
        if constexpr (std::is_same_v<T, Gaussian>) {
          w.key("variant").string("gaussian");
          w.key("mean").number(v.mean);
          w.key("variance").number(v.variance);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          w.key("variant").string("mixture");
          w.key("weights").begin_array();
          for (double x : v.weights) w.number(x);
          w.end_array();
          w.key("means").begin_array();
          for (const auto& c : v.components) w.number(c.mean);
          w.end_array();
          w.key("variances").begin_array();
          for (const auto& c : v.components) w.number(c.variance);
          w.end_array();
        } else if constexpr (std::is_same_v<T, Uniform>) {
          w.key("variant").string("uniform");
          w.key("a").number(v.a);
          w.key("b").number(v.b);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          w.key("variant").string("cauchy");
          w.key("location").number(v.location);
          w.key("scale").number(v.scale);
        } else {
          w.key("variant").string("exponential");
          w.key("rate").number(v.rate);
        }
        w.end_object();
      },
      d);
  return w.str();
}

AnalyticDensity analytic_density_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "gaussian") {
    return validate(Gaussian{j.at("mean").get<double>(), j.at("variance").get<double>()});
  }
  if (variant == "mixture") {
    GaussianMixture m;
    for (const auto& x : j.at("weights")) m.weights.push_back(x.get<double>());
    const auto& means = j.at("means");
    const auto& vars = j.at("variances");
    for (std::size_t i = 0; i < means.size(); ++i) {
      m.components.push_back(Gaussian{means[i].get<double>(), vars[i].get<double>()});
    }
    return validate(m);
  }
  if (variant == "uniform") {
    return validate(Uniform{j.at("a").get<double>(), j.at("b").get<double>()});
  }
  if (variant == "cauchy") {
    return validate(Cauchy{j.at("location").get<double>(), j.at("scale").get<double>()});
  }
  if (variant == "exponential") {
    return validate(Exponential{j.at("rate").get<double>()});
  }
  throw InvalidParameter("unknown analytic density variant: " + variant);
}

}  // namespace epilab
