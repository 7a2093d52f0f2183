#include "fhk/oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fhk/errors.hpp"

namespace fhk {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive_time(double t) {
    if (!(t > 0.0)) throw DomainError("kernel oracle needs t > 0");
}

void require_dim(int d) {
    if (d < 1 || d > 3) throw DomainError("oracle dimension must be 1, 2 or 3");
}

}  // namespace

double gaussian_kernel_radial(double t, double r, int d) {
    require_positive_time(t);
    require_dim(d);
    return std::pow(4.0 * pi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

double gaussian_kernel(double t, const Point& x, int d) { return gaussian_kernel_radial(t, norm(x, d), d); }

double poisson_kernel_radial(double t, double r, int d) {
    require_positive_time(t);
    require_dim(d);
    const double cd = std::tgamma(0.5 * (d + 1)) / std::pow(pi, 0.5 * (d + 1));
    return cd * t / std::pow(t * t + r * r, 0.5 * (d + 1));
}

double poisson_kernel(double t, const Point& x, int d) { return poisson_kernel_radial(t, norm(x, d), d); }

double levy_half_density(double s) {
    if (!(s > 0.0)) throw DomainError("Levy density needs s > 0");
    if (s < 1e-3) return std::exp(-0.25 / s - 1.5 * std::log(s)) / (2.0 * std::sqrt(pi));
    return std::exp(-0.25 / s) / (2.0 * std::sqrt(pi) * s * std::sqrt(s));
}

double levy_half_cdf(double s) {
    if (!(s > 0.0)) return 0.0;
    return std::erfc(0.5 / std::sqrt(s));
}

double oracle_value(OracleKind kind, double t, double r, int d) {
    switch (kind) {
        case OracleKind::Gaussian: return gaussian_kernel_radial(t, r, d);
        case OracleKind::Poisson: return poisson_kernel_radial(t, r, d);
        case OracleKind::LevyHalf: return levy_half_density(t);
    }
    throw DomainError("unknown oracle");
}

double poisson_time_derivative(int k, double t, double r) {
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    const std::complex<double> z(t, -r);
    const double sign = (k % 2) ? -1.0 : 1.0;
    return sign * std::tgamma(k + 1.0) * std::real(std::pow(z, -(k + 1))) / pi;
}

double poisson_space_derivative(int m, double t, double x) {
    if (m < 0) throw DomainError("derivative order must be nonnegative");
    require_positive_time(t);
    // p = (1/pi) Re[i / (x + i t)]
    const std::complex<double> z(x, t);
    const double sign = (m % 2) ? -1.0 : 1.0;
    const std::complex<double> i(0.0, 1.0);
    return sign * std::tgamma(m + 1.0) * std::real(i * std::pow(z, -(m + 1))) / pi;
}

double gaussian_space_derivative(int m, double t, double x) {
    if (m < 0) throw DomainError("derivative order must be nonnegative");
    require_positive_time(t);
    const double s = 2.0 * std::sqrt(t);
    const double u = x / s;
    const double sign = (m % 2) ? -1.0 : 1.0;
    return sign * boost::math::hermite(static_cast<unsigned>(m), u) * std::exp(-u * u) /
           (std::sqrt(4.0 * pi * t) * std::pow(s, m));
}

std::vector<double> gaussian_time_derivatives(double t, double r, int d, int k_max) {
    require_positive_time(t);
    require_dim(d);
    if (k_max < 0) throw DomainError("derivative order must be nonnegative");
    using Real = boost::multiprecision::cpp_bin_float_50;
    const int n = k_max + 1;
    const Real T(t);
    const Real R2 = Real(r) * Real(r);
    const Real half_d = Real(d) / 2;
    const Real pi_mp = boost::math::constants::pi<Real>();

    // g(t + h) = -d/2 log(4 pi (t+h)) - r^2 / (4 (t+h)) as a power series in h
    std::vector<Real> g(n);
    g[0] = -half_d * log(4 * pi_mp * T) - R2 / (4 * T);
    Real tp = T;
    for (int j = 1; j < n; ++j) {
        const Real sgn = (j % 2) ? 1 : -1;
        const Real log_term = sgn / (j * tp);
        tp *= T;
        const Real inv_term = ((j % 2) ? -1 : 1) / tp;
        g[j] = -half_d * log_term - R2 / 4 * inv_term;
    }
    // f = exp(g): j f_j = sum_{i=1..j} i g_i f_{j-i}
    std::vector<Real> f(n);
    f[0] = exp(g[0]);
    for (int j = 1; j < n; ++j) {
        Real acc = 0;
        for (int i = 1; i <= j; ++i) acc += i * g[i] * f[j - i];
        f[j] = acc / j;
    }
    std::vector<double> out(n);
    Real fact = 1;
    for (int j = 0; j < n; ++j) {
        if (j > 0) fact *= j;
        out[j] = static_cast<double>(f[j] * fact);
    }
    return out;
}

double stable_time_derivative_at_zero(double alpha, int k, double r) {
    if (!(r > 0.0)) throw DomainError("t = 0 derivative needs r > 0");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (k == 0) return 0.0;
    const double a = alpha * k;
    const double sign = (k % 2) ? 1.0 : -1.0;
    return sign * std::exp(std::lgamma(a + 1.0) - (a + 1.0) * std::log(r)) * std::sin(0.5 * pi * a) / pi;
}

double stable_space_derivative_at_origin(double alpha, int m) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (m < 0) throw DomainError("derivative order must be nonnegative");
    if (m % 2) return 0.0;
    const double sign = ((m / 2) % 2) ? -1.0 : 1.0;
    return sign * std::exp(std::lgamma((m + 1.0) / alpha)) / (alpha * pi);
}

}  // namespace fhk
