#pragma once

// Reference values computed independently of the library: closed forms and
// asymptotic series written out directly, plus Boost quadrature where an
// integral is unavoidable.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace ref {

inline constexpr double pi = std::numbers::pi;

inline double poisson(double t, double r, int d) {
    const double cd = std::tgamma(0.5 * (d + 1)) / std::pow(pi, 0.5 * (d + 1));
    return cd * t / std::pow(t * t + r * r, 0.5 * (d + 1));
}

inline double gauss(double t, double r, int d) {
    return std::pow(4.0 * pi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

inline double levy_half(double s) {
    return std::exp(-0.25 / s) / (2.0 * std::sqrt(pi) * std::pow(s, 1.5));
}

inline double cauchy_cdf(double x, double t) { return 0.5 + std::atan(x / t) / pi; }

// Periodic Poisson kernel on [-pi, pi).
inline double torus_poisson(double t, double x) {
    return std::sinh(t) / (2.0 * pi * (std::cosh(t) - std::cos(x)));
}

// d^k/dt^k of the 1-D Poisson kernel: (1/pi) Re[(-1)^k k! (t - i r)^{-(k+1)}].
inline double poisson_dt(int k, double t, double r) {
    const std::complex<double> z(t, -r);
    return std::real(std::pow(-1.0, k) * std::tgamma(k + 1.0) * std::pow(z, -(k + 1.0))) / pi;
}

// Large-|x| expansion of the 1-D stable density at t = 1:
// p(x) = (1/pi) sum_k (-1)^{k+1} Gamma(alpha k + 1) sin(pi alpha k / 2) / k! |x|^{-alpha k - 1}.
// Integrated over |x| > R on both sides.
inline double stable_two_sided_tail(double alpha, double R, int terms = 40) {
    double s = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double c = std::pow(-1.0, k + 1) * std::exp(std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0)) *
                         std::sin(pi * alpha * k / 2.0) / pi;
        s += c * std::pow(R, -alpha * k) / (alpha * k);
    }
    return 2.0 * s;
}

// k-th time derivative at t = 0 of the 1-D stable kernel, from the same expansion.
inline double stable_dt_at_zero(double alpha, int k, double r) {
    return std::pow(-1.0, k + 1) * std::exp(std::lgamma(alpha * k + 1.0)) * std::sin(pi * alpha * k / 2.0) /
           (pi * std::pow(r, alpha * k + 1.0));
}

// 1-D stable density by direct Fourier inversion (1/pi) int_0^inf exp(-t xi^alpha) cos(r xi) d xi.
// Sum over the intervals between zeros of cos(r xi) (tanh-sinh at the origin, Gauss-Kronrod after), until
// exp(-t xi^alpha) is below rounding.
inline double stable_density(double alpha, double t, double r) {
    auto f = [&](double xi) { return std::exp(-t * std::pow(xi, alpha)) * std::cos(r * xi); };
    if (r == 0.0) return boost::math::quadrature::exp_sinh<double>().integrate(f) / pi;
    boost::math::quadrature::tanh_sinh<double> q;
    const double end = std::pow(45.0 / t, 1.0 / alpha);
    double s = 0.0, lo = 0.0;
    for (int k = 0; lo < end; ++k) {
        const double hi = (k + 0.5) * pi / r;
        s += k == 0 ? q.integrate(f, lo, hi) : boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 5);
        lo = hi;
    }
    return s / pi;
}

// 2^alpha Gamma((d+alpha)/2) / (pi^{d/2} |Gamma(-alpha/2)|).
inline double laplacian_constant(double alpha, int d) {
    return std::pow(2.0, alpha) * std::tgamma(0.5 * (d + alpha)) /
           (std::pow(pi, 0.5 * d) * std::abs(std::tgamma(-0.5 * alpha)));
}

}  // namespace ref
