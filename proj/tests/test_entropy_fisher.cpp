#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "epilab/analytic_density.hpp"
#include "epilab/entropy.hpp"
#include "epilab/errors.hpp"
#include "epilab/heat_flow.hpp"
#include "epilab/numeric.hpp"

using namespace epilab;

TEST_CASE("entropy: closed forms") {
  CHECK(differential_entropy(AnalyticDensity{Gaussian{0.0, 1.0}}).value ==
        doctest::Approx(1.4189385332046727).epsilon(1e-12));
  CHECK(differential_entropy(AnalyticDensity{Uniform{0.0, 1.0}}).value == doctest::Approx(0.0));
  CHECK(differential_entropy(AnalyticDensity{Exponential{2.0}}).value ==
        doctest::Approx(1.0 - std::log(2.0)));
  CHECK(differential_entropy(AnalyticDensity{Cauchy{0.0, 1.0}}).value ==
        doctest::Approx(std::log(4.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("entropy: cauchy grid estimate converges to log(4 pi) under widening") {
  // quadrature oracle on successively wider mass-driven windows
  const double target = std::log(4.0 * kPi);
  double prev_err = 1.0;
  for (double tail : {1e-3, 1e-4, 1e-5}) {
    const auto w = default_window(Cauchy{0.0, 1.0}, tail);
    const GridDensity f = render(Cauchy{0.0, 1.0}, w, 1 << 20, 1.0 - 2.0 * tail);
    const double err = std::abs(differential_entropy(f).value - target);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-3);
}

TEST_CASE("entropy: mixture grid route is refinement-stable") {
  const AnalyticDensity m{
      GaussianMixture{{0.5, 0.5}, {Gaussian{-1.0, 0.5}, Gaussian{1.5, 1.0}}}};
  const double h16 = differential_entropy(m, 1 << 16).value;
  const double oracle = oracles::entropy_quadrature(m, -12.0, 13.0);
  CHECK(std::abs(h16 - oracle) <= 1e-6);
}

TEST_CASE("entropy: denormalized grids are rejected") {
  GridDensity f = render(Gaussian{0.0, 1.0}, {-9.0, 9.0}, 1024);
  f.values *= 1.001;  // break the invariant on a copy
  CHECK_THROWS_AS(differential_entropy(f), NotNormalized);
}

TEST_CASE("fisher: closed forms and grid routes") {
  CHECK(fisher_information(AnalyticDensity{Gaussian{0.0, 2.0}}).value == doctest::Approx(0.5));
  CHECK(fisher_information(AnalyticDensity{Cauchy{0.0, 1.0}}).value == doctest::Approx(0.5));
  // grid route within 1e-3 of the closed forms
  const GridDensity g = render(Gaussian{0.0, 2.0}, {-16.0, 16.0}, 1 << 14);
  CHECK(std::abs(fisher_information(g).value - 0.5) <= 1e-3);
  const GridDensity c = render(Cauchy{0.0, 1.0}, {-1e4, 1e4}, 1 << 20, 1.0 - 1e-4);
  CHECK(std::abs(fisher_information(c).value - 0.5) <= 1e-3);
  // independent quadrature oracle with the analytic derivative
  CHECK(oracles::fisher_quadrature(Cauchy{0.0, 1.0}, -2000.0, 2000.0) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fisher: smoothing bound I(f * phi_t) <= 1/t") {
  const GridDensity u = render(Uniform{0.0, 1.0}, {-1.0, 2.0}, 4096);
  const GridDensity m = render_auto(
      AnalyticDensity{GaussianMixture{{0.5, 0.5}, {Gaussian{-3.0, 0.01}, Gaussian{3.0, 0.01}}}},
      1 << 14);
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK(fisher_information(gaussian_smooth(u, t)).value <= 1.0 / t + 1e-6);
    CHECK(fisher_information(gaussian_smooth(m, t)).value <= 1.0 / t + 1e-6);
  }
}

TEST_CASE("fisher: jump densities are flagged as not absolutely continuous") {
  const GridDensity u = render(Uniform{0.0, 1.0}, {-1.0, 2.0}, 4096);
  const auto est = fisher_information(u);
  CHECK(est.jump_warning);
  CHECK(std::isinf(est.value));
  CHECK(std::isinf(fisher_information(AnalyticDensity{Uniform{0.0, 1.0}}).value));
  CHECK(std::isinf(fisher_information(AnalyticDensity{Exponential{1.0}}).value));
}

TEST_CASE("relative entropy: identical, gaussian pair, uniform vs gaussian") {
  const GridDensity f = render(Gaussian{0.0, 1.0}, {-14.0, 14.0}, 1 << 14);
  CHECK(relative_entropy(f, f).value <= 1e-10);

  const GridDensity g = render(Gaussian{0.0, 2.0}, {-14.0, 14.0}, 1 << 14);
  const double kl_closed = 0.5 * kLog2 - 0.25;  // D(N(0,1) || N(0,2))
  CHECK(std::abs(relative_entropy(f, g).value - kl_closed) <= 1e-5);

  // D(U(0,1) || N(0,1)) = (1/2) log(2 pi) + 1/6, on a grid whose nodes hit
  // the jumps (half-weight sampling keeps the trapezoid mass exact there);
  // the window is wide enough that the gaussian normalization is untouched
  const Eigen::Index m = 2048;
  const Eigen::Index n = 19 * m + 1;  // window [-9, 10], step 1/m
  Eigen::ArrayXd uv(n), gv(n);
  const double start = -9.0, step = 1.0 / static_cast<double>(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = start + step * static_cast<double>(i);
    uv[i] = pdf(Uniform{0.0, 1.0}, x);
    gv[i] = normal_pdf(x, 0.0, 1.0);
  }
  const GridDensity u = make_grid_density(start, step, std::move(uv));
  const GridDensity nn = make_grid_density(start, step, std::move(gv));
  const double expect = 0.5 * kLog2Pi + 1.0 / 6.0;
  CHECK(std::abs(relative_entropy(u, nn).value - expect) <= 1e-4);

  // support violation
  CHECK(std::isinf(relative_entropy(nn, u).value));

  const GridDensity h = render(Gaussian{0.0, 1.0}, {-14.0, 14.0}, 1 << 13);
  CHECK_THROWS_AS(relative_entropy(f, h), GridMismatch);
}

TEST_CASE("relative entropy: Gibbs on random mixture pairs") {
  std::mt19937 rng(23);
  for (int i = 0; i < 15; ++i) {
    const AnalyticDensity a = oracles::random_mixture(rng);
    const AnalyticDensity b = oracles::random_mixture(rng);
    const std::array<double, 2> w{-16.0, 16.0};
    const GridDensity fa = render(a, w, 4096);
    const GridDensity fb = render(b, w, 4096);
    CHECK(relative_entropy(fa, fb).value >= -1e-9);
  }
}

TEST_CASE("entropy: gaussian maximizes at fixed variance") {
  std::mt19937 rng(31);
  for (int i = 0; i < 15; ++i) {
    const GridDensity f = render_auto(oracles::random_mixture(rng), 4096);
    const double h = differential_entropy(f).value;
    const double cap = 0.5 * (kLog2PiE + std::log(variance(f)));
    CHECK(h <= cap + 1e-4);
  }
}

TEST_CASE("entropy/fisher: affine and scaling laws on closed forms") {
  for (double a : {0.5, 2.0, -1.5}) {
    const AnalyticDensity g0{Gaussian{0.7, 1.3}};
    const AnalyticDensity g1 = affine(g0, a, 0.4);
    CHECK(differential_entropy(g1).value ==
          doctest::Approx(differential_entropy(g0).value + std::log(std::abs(a))).epsilon(1e-12));
    const AnalyticDensity c0{Cauchy{0.0, 0.8}};
    const AnalyticDensity c1 = affine(c0, a, 0.0);
    CHECK(differential_entropy(c1).value ==
          doctest::Approx(differential_entropy(c0).value + std::log(std::abs(a))).epsilon(1e-12));
    CHECK(fisher_information(c1).value ==
          doctest::Approx(fisher_information(c0).value / (a * a)).epsilon(1e-12));
    CHECK(fisher_information(g1).value ==
          doctest::Approx(fisher_information(g0).value / (a * a)).epsilon(1e-12));
  }
}

TEST_CASE("fisher: Cramer-Rao direction on rendered densities") {
  std::mt19937 rng(37);
  for (int i = 0; i < 10; ++i) {
    const GridDensity f = render_auto(oracles::random_mixture(rng), 8192);
    const auto est = fisher_information(f);
    if (est.jump_warning) continue;
    CHECK(est.value * variance(f) >= 1.0 - 1e-3);
  }
}

TEST_CASE("entropy: refinement gap bounds the next refinement") {
  const AnalyticDensity m{
      GaussianMixture{{0.6, 0.4}, {Gaussian{-0.5, 0.7}, Gaussian{1.0, 1.4}}}};
  const std::array<double, 2> w = default_window(m, 1e-12);
  const GridDensity f1 = render(m, w, 4096);
  const GridDensity f2 = render(m, w, 8191);  // same window, step halved
  const auto e1 = differential_entropy(f1);
  const auto e2 = differential_entropy(f2);
  CHECK(std::abs(e2.value - e1.value) <= 4.0 * e1.refinement_gap + 1e-12);
}

TEST_CASE("discrete entropy: closed cases and the large-sigma gaussian") {
  CHECK(discrete_entropy(uniform_pmf(0, 1)) == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(discrete_entropy(point_mass(5)) == doctest::Approx(0.0));
  const IntegerPmf p = discretized_gaussian(0.0, 1e4);
  const double cont = 0.5 * (kLog2PiE + std::log(1e4));
  CHECK(std::abs(discrete_entropy(p) - cont) <= 1e-3);
}

TEST_CASE("discrete relative entropy: basics and CLT direction") {
  const IntegerPmf u2 = uniform_pmf(0, 1);
  CHECK(discrete_relative_entropy(u2, u2) == doctest::Approx(0.0));
  CHECK(discrete_relative_entropy(point_mass(0), u2) == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(std::isinf(discrete_relative_entropy(u2, point_mass(0))));

  double prev = std::numeric_limits<double>::infinity();
  for (long n : {25L, 100L, 400L}) {
    const IntegerPmf b = binomial_pmf(n, 0.5);
    const IntegerPmf z = discretized_gaussian(b.mean, b.variance);
    const double d = discrete_relative_entropy(b, z);
    CHECK(d > 0.0);
    CHECK(d < prev);
    prev = d;
  }
}
