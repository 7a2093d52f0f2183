#pragma once

#include <vector>

#include "fhk/grid.hpp"

namespace fhk {

enum class OracleKind {
    Gaussian,  ///< alpha = 2 heat kernel
    Poisson,   ///< alpha = 1 heat kernel
    LevyHalf,  ///< one-sided 1/2-stable density, the alpha = 1 subordinator
};

/// (4 pi t)^{-d/2} exp(-|x|^2 / (4t)).
double gaussian_kernel(double t, const Point& x, int d);
double gaussian_kernel_radial(double t, double r, int d);

/// c_d t / (t^2 + |x|^2)^{(d+1)/2}, c_d = Gamma((d+1)/2) / pi^{(d+1)/2}.
double poisson_kernel(double t, const Point& x, int d);
double poisson_kernel_radial(double t, double r, int d);

/// (1 / (2 sqrt(pi))) s^{-3/2} exp(-1/(4s)).
double levy_half_density(double s);
/// erfc(1 / (2 sqrt(s))).
double levy_half_cdf(double s);

/// Dispatch on the tag: kernels take (t, r, d), LevyHalf ignores r and d.
double oracle_value(OracleKind kind, double t, double r, int d);

/// d=1 Poisson kernel: (1/pi) Re[(-1)^k k! (t - i r)^{-(k+1)}] = d^k/dt^k p_1.
double poisson_time_derivative(int k, double t, double r);
/// d=1 Poisson kernel: d^m/dx^m p_1(t, x).
double poisson_space_derivative(int m, double t, double x);
/// d=1 Gaussian kernel: d^m/dx^m via Hermite polynomials.
double gaussian_space_derivative(int m, double t, double x);

/// d^k/dt^k of the Gaussian kernel for k = 0..k_max at (t, r), computed by
/// Taylor-mode arithmetic in 50-digit floating point.
std::vector<double> gaussian_time_derivatives(double t, double r, int d, int k_max);

/// d=1 stable kernel of order alpha, k-th time derivative at t = 0, r > 0:
/// (1/pi) (-1)^{k+1} Gamma(alpha k + 1) sin(pi alpha k / 2) / r^{alpha k + 1}.
double stable_time_derivative_at_zero(double alpha, int k, double r);

/// d=1 stable kernel of order alpha, m-th space derivative at t = 1, x = 0
/// for even m: (1/pi) (-1)^{m/2} Gamma((m+1)/alpha) / alpha. Odd m give 0.
double stable_space_derivative_at_origin(double alpha, int m);

}  // namespace fhk
