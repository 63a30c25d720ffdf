#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>

namespace epilab {

inline constexpr double kLog2 = 0.6931471805599453094;
inline constexpr double kLog2Pi = 1.8378770664093454836;
inline constexpr double kLog2PiE = 2.8378770664093454836;
inline constexpr double kPi = 3.1415926535897932385;

// Density values below this floor are treated as exact zeros by the
// information functionals (the integrand vanishes together with f).
inline constexpr double kDensityFloor = 1e-300;

/// Compensated (Neumaier) summation; error is O(eps * sum|v|), independent
/// of length. The information functionals need this: some acceptance gaps
/// sit only a few hundred ulps above zero.
double neumaier_sum(const double* v, std::ptrdiff_t n);
double neumaier_sum(const Eigen::ArrayXd& v);

/// Trapezoid rule on a uniform grid: dx * (sum - (first+last)/2).
double trapezoid(const Eigen::ArrayXd& v, double dx);

/// x*log(x) with the 0*log 0 = 0 convention.
double xlogx(double x);

std::size_t next_pow2(std::size_t n);

/// Standard normal CDF / survival function; log_normal_sf stays finite far
/// past the point where erfc underflows (asymptotic series for z > 36).
double normal_cdf(double z);
double normal_sf(double z);
double log_normal_sf(double z);
double normal_pdf(double x, double mean, double variance);

/// Worker count for sweep fan-out; EPI_LAB_THREADS caps it.
int worker_count();

/// Index-parallel loop. Each index must write only its own slot so results
/// are deterministic regardless of scheduling.
void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& fn);

/// Linear convolution of two sampled sequences (length na+nb-1), FFT-backed
/// with zero padding to the next power of two >= na+nb.
Eigen::ArrayXd fft_linear_convolve(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b);

/// Direct O(n*m) linear convolution; reference path for small inputs.
Eigen::ArrayXd direct_linear_convolve(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b);

}  // namespace epilab
