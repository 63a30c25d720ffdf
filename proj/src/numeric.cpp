#include "epilab/numeric.hpp"

#include <unsupported/Eigen/FFT>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "epilab/errors.hpp"

namespace epilab {

double neumaier_sum(const double* v, std::ptrdiff_t n) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double x = v[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double neumaier_sum(const Eigen::ArrayXd& v) { return neumaier_sum(v.data(), v.size()); }

double trapezoid(const Eigen::ArrayXd& v, double dx) {
  if (v.size() == 0) return 0.0;
  if (v.size() == 1) return 0.0;
  const double s = neumaier_sum(v);
  return dx * (s - 0.5 * (v[0] + v[v.size() - 1]));
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

double log_normal_sf(double z) {
  if (z < 36.0) {
    return std::log(normal_sf(z));
  }
  // Asymptotic expansion of the Mills ratio; relative error < 1e-12 here.
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - 0.5 * kLog2Pi - std::log(z) + std::log(series);
}

double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * kPi * variance);
}

int worker_count() {
  static const int n = [] {
    if (const char* s = std::getenv("EPI_LAB_THREADS")) {
      const int v = std::atoi(s);
      if (v > 0) return v > 64 ? 64 : v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) return 1;
    return hc > 8 ? 8 : static_cast<int>(hc);
  }();
  return n;
}

void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& fn) {
  if (n <= 0) return;
  const std::ptrdiff_t w = std::min<std::ptrdiff_t>(worker_count(), n);
  if (w <= 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (std::ptrdiff_t t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::ptrdiff_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Eigen::ArrayXd fft_linear_convolve(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  const std::size_t na = static_cast<std::size_t>(a.size());
  const std::size_t nb = static_cast<std::size_t>(b.size());
  if (na == 0 || nb == 0) throw InvalidParameter("fft_linear_convolve: empty input");
  const std::size_t nc = na + nb - 1;
  const std::size_t nfft = next_pow2(na + nb);

  std::vector<std::complex<double>> pa(nfft), pb(nfft);
  for (std::size_t i = 0; i < na; ++i) pa[i] = a[static_cast<Eigen::Index>(i)];
  for (std::size_t i = 0; i < nb; ++i) pb[i] = b[static_cast<Eigen::Index>(i)];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < nfft; ++i) fa[i] = fa[i] * fb[i];
  std::vector<std::complex<double>> out;
  fft.inv(out, fa);

  Eigen::ArrayXd c(static_cast<Eigen::Index>(nc));
  for (std::size_t i = 0; i < nc; ++i) c[static_cast<Eigen::Index>(i)] = out[i].real();
  return c;
}

Eigen::ArrayXd direct_linear_convolve(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  const Eigen::Index na = a.size();
  const Eigen::Index nb = b.size();
  Eigen::ArrayXd c = Eigen::ArrayXd::Zero(na + nb - 1);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

}  // namespace epilab
