#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "epilab/analytic_density.hpp"
#include "epilab/distribution_function.hpp"
#include "epilab/errors.hpp"
#include "epilab/grid_density.hpp"
#include "epilab/numeric.hpp"

using namespace epilab;

TEST_CASE("render: gaussian is normalized on the window") {
  const GridDensity f = render(Gaussian{0.0, 1.0}, {-10.0, 10.0}, 4096);
  CHECK(std::abs(mass(f) - 1.0) <= 1e-8);
  CHECK(f.n() == 4096);
}

TEST_CASE("render: uniform is an indicator up to edge cells") {
  const GridDensity f = render(Uniform{0.0, 1.0}, {-1.0, 2.0}, 3000);
  for (Eigen::Index i = 0; i < f.n(); ++i) {
    const double x = f.x(i);
    if (x > 0.01 && x < 0.99) CHECK(f.values[i] == doctest::Approx(1.0).epsilon(1e-3));
    if (x < -0.01 || x > 1.01) CHECK(f.values[i] == 0.0);
  }
}

TEST_CASE("render: cauchy mass-driven window captures all but ~6.4e-5") {
  // exact Cauchy CDF at the window edges
  const double outside = 2.0 * cdf(Cauchy{0.0, 1.0}, -1e4);
  CHECK(outside < 1e-4);
  CHECK(outside > 1e-5);
  const GridDensity f = render(Cauchy{0.0, 1.0}, {-1e4, 1e4}, 1 << 16, 1.0 - 1e-4);
  CHECK(f.tail_mass_dropped == doctest::Approx(outside).epsilon(1e-6));
}

TEST_CASE("render: cumulative trapezoid tracks the exact CDF") {
  for (const AnalyticDensity d :
       {AnalyticDensity{Gaussian{0.3, 1.7}},
        AnalyticDensity{GaussianMixture{{0.5, 0.5}, {Gaussian{-1.0, 0.4}, Gaussian{1.0, 0.9}}}}}) {
    const GridDensity f = render_auto(d, 4096);
    const DistributionFunction F = make_cdf(f);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < f.n(); i += 7) {
      worst = std::max(worst, std::abs(F.F(f.x(i)) - cdf(d, f.x(i))));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("render: window and parameter validation") {
  CHECK_THROWS_AS(render(Gaussian{0.0, 4.0}, {-5.0, 5.0}, 4096), WindowTooSmall);
  CHECK_THROWS_AS(render(Gaussian{std::nan(""), 1.0}, {-5.0, 5.0}, 4096), InvalidParameter);
  CHECK_THROWS_AS(render(Gaussian{0.0, 1.0}, {-5.0, 5.0}, 4), InvalidParameter);
  CHECK_THROWS_AS(validate(AnalyticDensity{Gaussian{0.0, -1.0}}), InvalidParameter);
  CHECK_THROWS_AS(validate(AnalyticDensity{GaussianMixture{{0.6, 0.6}, {Gaussian{}, Gaussian{}}}}),
                  InvalidParameter);
}

TEST_CASE("convolve: two standard gaussians give N(0,2)") {
  const GridDensity f = render(Gaussian{0.0, 1.0}, {-12.0, 12.0}, 4096);
  const GridDensity c = convolve(f, f);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.n(); ++i) {
    worst = std::max(worst, std::abs(c.values[i] - normal_pdf(c.x(i), 0.0, 2.0)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("convolve: uniforms give the triangle with peak 1 at x=1") {
  const GridDensity u = render(Uniform{0.0, 1.0}, {0.0, 1.0}, 2001);
  const GridDensity c = convolve(u, u);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.n(); ++i) {
    const double x = c.x(i);
    const double tri = x < 0.0 ? 0.0 : (x <= 1.0 ? x : (x <= 2.0 ? 2.0 - x : 0.0));
    worst = std::max(worst, std::abs(c.values[i] - tri));
  }
  CHECK(worst <= 2e-3);
  CHECK(interpolate(c, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("convolve: near-delta kernel is the identity") {
  const GridDensity f = render(Gaussian{0.0, 1.0}, {-8.0, 8.0}, 16001);
  const GridDensity g = render(Gaussian{0.0, 1e-6}, {-0.01, 0.01}, 21);
  const GridDensity c = convolve(f, g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < f.n(); ++i) {
    worst = std::max(worst, std::abs(interpolate(c, f.x(i)) - f.values[i]));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("convolve: FFT path matches direct summation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::ArrayXd a(300), b(211);
  for (auto* arr : {&a, &b}) {
    for (Eigen::Index i = 0; i < arr->size(); ++i) (*arr)[i] = u(rng);
  }
  const Eigen::ArrayXd fast = fft_linear_convolve(a, b);
  const Eigen::ArrayXd slow = direct_linear_convolve(a, b);
  REQUIRE(fast.size() == slow.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < fast.size(); ++i) {
    worst = std::max(worst, std::abs(fast[i] - slow[i]) / std::max(1.0, std::abs(slow[i])));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("convolve: symmetry is bitwise") {
  const GridDensity f = render(Gaussian{0.4, 1.3}, {-10.0, 11.0}, 1024);
  // render the uniform on f's step, window snapped outward to keep the mass
  const Eigen::Index n = static_cast<Eigen::Index>(std::ceil(3.5 / f.grid_step)) + 1;
  const GridDensity g2 =
      render(Uniform{-1.0, 2.5}, {-1.0, -1.0 + f.grid_step * static_cast<double>(n - 1)}, n);
  const GridDensity c1 = convolve(f, g2);
  const GridDensity c2 = convolve(g2, f);
  REQUIRE(c1.n() == c2.n());
  for (Eigen::Index i = 0; i < c1.n(); ++i) {
    CHECK(c1.values[i] == c2.values[i]);  // bitwise
  }
}

TEST_CASE("convolve: mismatched steps throw") {
  const GridDensity f = render(Gaussian{0.0, 1.0}, {-8.0, 8.0}, 1024);
  const GridDensity g = render(Gaussian{0.0, 1.0}, {-8.0, 8.0}, 1025);
  CHECK_THROWS_AS(convolve(f, g), GridMismatch);
}

TEST_CASE("convolve: variance additivity") {
  const GridDensity f = render_auto(AnalyticDensity{Gaussian{0.5, 1.4}}, 4096);
  const GridDensity g =
      render_auto(AnalyticDensity{GaussianMixture{{0.3, 0.7}, {Gaussian{-1.0, 0.6}, Gaussian{1.0, 1.1}}}}, 4096);
  const double vf = variance(f);
  const double vg = variance(g);
  const double vc = variance(convolve(rescale(f, 1.0, g.grid_step), g));
  CHECK(std::abs(vc - (vf + vg)) / (vf + vg) <= 1e-4);
}

TEST_CASE("moments: closed forms and flags") {
  CHECK(moment(AnalyticDensity{Gaussian{0.0, 4.0}}, 2) == doctest::Approx(4.0));
  CHECK(moment(AnalyticDensity{Uniform{0.0, 1.0}}, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(std::isinf(moment(AnalyticDensity{Cauchy{0.0, 1.0}}, 1, true)));
  CHECK(std::isinf(moment(AnalyticDensity{Cauchy{0.0, 1.0}}, 2)));
  CHECK(moment(AnalyticDensity{Exponential{2.0}}, 3) == doctest::Approx(6.0 / 8.0));
  // grid moment vs analytic: E[X^2] = var + mean^2
  const GridDensity f = render_auto(AnalyticDensity{Gaussian{1.0, 2.0}}, 8192);
  CHECK(moment(f, 2) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("normalization invariant on random mixtures") {
  std::mt19937 rng(11);
  for (int i = 0; i < 25; ++i) {
    const GridDensity f = render_auto(oracles::random_mixture(rng), 2048);
    CHECK(std::abs(mass(f) - 1.0) <= 1e-8);
  }
}

TEST_CASE("levy: identical arguments give zero") {
  const DistributionFunction F = make_cdf(AnalyticDensity{Gaussian{0.0, 1.0}});
  CHECK(levy_distance(F, F, levy_spec_for(F, F)) <= 1e-9);
}

TEST_CASE("levy: mean-shifted gaussians, monotone in the shift") {
  const DistributionFunction F = make_cdf(AnalyticDensity{Gaussian{0.0, 1.0}});
  double prev = 1.0;
  for (double eps : {0.1, 0.05, 0.025}) {
    const DistributionFunction G = make_cdf(AnalyticDensity{Gaussian{eps, 1.0}});
    const double d = levy_distance(F, G, levy_spec_for(F, G, 8192));
    CHECK(d > 0.0);
    CHECK(d <= eps);
    CHECK(d < prev);
    // brute-force envelope oracle agrees to its own scan resolution
    const double ref = oracles::levy_scan([&](double x) { return F.F(x); },
                                          [&](double x) { return G.F(x); }, -9.0, 9.0, 0.1);
    CHECK(std::abs(d - ref) <= 3e-5);
    prev = d;
  }
}

TEST_CASE("levy: two-point mixture sequence decreases to zero") {
  const DistributionFunction F = make_cdf(AnalyticDensity{Gaussian{0.0, 1.0}});
  double prev = 1.0;
  for (double a : {0.2, 0.1, 0.05}) {
    const AnalyticDensity mix{
        GaussianMixture{{0.5, 0.5}, {Gaussian{-a, 1.0 - a * a}, Gaussian{a, 1.0 - a * a}}}};
    const DistributionFunction G = make_cdf(mix);
    const double d = levy_distance(F, G, levy_spec_for(F, G, 8192));
    CHECK(d > 0.0);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("levy: symmetry within tolerance") {
  const DistributionFunction F = make_cdf(AnalyticDensity{Gaussian{0.0, 1.0}});
  const DistributionFunction G = make_cdf(AnalyticDensity{Gaussian{0.4, 2.0}});
  const auto spec = levy_spec_for(F, G, 16384);
  CHECK(std::abs(levy_distance(F, G, spec) - levy_distance(G, F, spec)) <= 1e-6);
  // CDF kinks make the sampled envelope slightly asymmetric; stays grid-small
  const DistributionFunction U = make_cdf(AnalyticDensity{Uniform{-1.0, 1.5}});
  const auto spec_u = levy_spec_for(F, U, 16384);
  CHECK(std::abs(levy_distance(F, U, spec_u) - levy_distance(U, F, spec_u)) <= 5e-4);
}

TEST_CASE("levy: non-monotone CDF is rejected") {
  DistributionFunction bad;
  bad.F = [](double x) { return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.6 * std::exp(-x); };
  bad.support_low = -30.0;
  bad.support_high = 30.0;
  DistributionFunction wiggle;
  wiggle.F = [](double x) { return 0.5 + 0.5 * std::tanh(x) - 0.2 * std::exp(-x * x); };
  wiggle.support_low = -30.0;
  wiggle.support_high = 30.0;
  CHECK_THROWS_AS(levy_distance(wiggle, bad, LevySamplingSpec{-5.0, 5.0, 4096, 1e-9}),
                  NonMonotoneCDF);
}

TEST_CASE("json round trips") {
  const GridDensity f = render(Gaussian{0.25, 1.5}, {-11.0, 11.0}, 256);
  const GridDensity f2 = grid_density_from_json(to_json(f));
  CHECK(f2.grid_start == f.grid_start);
  CHECK(f2.grid_step == f.grid_step);
  REQUIRE(f2.n() == f.n());
  // serialization is lossless; construction renormalizes, which can move
  // values by an ulp
  for (Eigen::Index i = 0; i < f.n(); ++i) {
    CHECK(f2.values[i] == doctest::Approx(f.values[i]).epsilon(1e-15));
  }

  for (const AnalyticDensity d :
       {AnalyticDensity{Gaussian{0.5, 2.0}}, AnalyticDensity{Uniform{-1.0, 3.0}},
        AnalyticDensity{Cauchy{0.1, 0.7}}, AnalyticDensity{Exponential{1.7}},
        AnalyticDensity{GaussianMixture{{0.25, 0.75}, {Gaussian{-1.0, 0.5}, Gaussian{1.0, 1.5}}}}}) {
    const AnalyticDensity d2 = analytic_density_from_json(to_json(d));
    CHECK(pdf(d2, 0.37) == pdf(d, 0.37));
    CHECK(cdf(d2, -0.8) == cdf(d, -0.8));
  }
}

TEST_CASE("affine transforms stay in-family") {
  const AnalyticDensity g = affine(AnalyticDensity{Gaussian{1.0, 2.0}}, -2.0, 1.0);
  CHECK(std::get<Gaussian>(g).mean == doctest::Approx(-1.0));
  CHECK(std::get<Gaussian>(g).variance == doctest::Approx(8.0));
  CHECK_THROWS_AS(affine(AnalyticDensity{Exponential{1.0}}, -1.0, 0.0), InvalidParameter);
}
