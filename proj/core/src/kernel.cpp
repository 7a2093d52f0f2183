#include "fhk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fhk/errors.hpp"
#include "fhk/oracles.hpp"

namespace fhk {

namespace bq = boost::math::quadrature;
namespace mp = boost::multiprecision;

namespace {

constexpr double pi = std::numbers::pi;

double sign_pow(int n) { return (n % 2) ? -1.0 : 1.0; }

// ---------------------------------------------------------------------------
// Fourier route at t = 1, x = s e_1.

// alpha = 2: shift xi_1 -> eta + i s/2 so the integrand becomes
// exp(-s^2/4 - |eta|^2) times a polynomial, then integrate the polynomial
// exactly against the Gaussian weight.
double gaussian_shifted(int d, double s, int k, const std::array<int, 3>& beta) {
    const double c = 0.5 * s;
    auto moment = [](int n) { return (n % 2) ? 0.0 : std::tgamma(0.5 * (n + 1)); };
    // int (x + i c)^n e^{-x^2} dx = sqrt(pi) (i/2)^n H_n(c)
    auto shifted_moment = [c](int n) {
        const std::complex<double> i2(0.0, 0.5);
        return std::sqrt(pi) * std::pow(i2, n) * boost::math::hermite(static_cast<unsigned>(n), c);
    };
    std::complex<double> sum = 0.0;
    for (int j = 0; j <= k; ++j) {
        const int m = k - j;
        double transverse = 0.0;
        if (d == 1) {
            transverse = m == 0 ? 1.0 : 0.0;
        } else if (d == 2) {
            transverse = moment(2 * m + beta[1]);
        } else {
            for (int l = 0; l <= m; ++l)
                transverse += boost::math::binomial_coefficient<double>(m, l) *
                              moment(2 * l + beta[1]) * moment(2 * (m - l) + beta[2]);
        }
        if (transverse == 0.0) continue;
        sum += boost::math::binomial_coefficient<double>(k, j) * shifted_moment(2 * j + beta[0]) *
               transverse;
    }
    const int order = beta[0] + beta[1] + beta[2];
    const std::complex<double> ipow = std::pow(std::complex<double>(0.0, 1.0), order);
    return sign_pow(k) * std::exp(-c * c) * std::real(ipow * sum) / std::pow(2.0 * pi, d);
}

double fourier_unit_time(double alpha, int d, double s, int k, const std::array<int, 3>& beta,
                         const QuadratureSpec& spec) {
    if (alpha == 2.0) return gaussian_shifted(d, s, k, beta);
    const int order = beta[0] + beta[1] + beta[2];

    if (d == 1) {
        const int m = beta[0];
        const double a = alpha * k + m;
        const double pre = sign_pow(k) / pi;
        if (m % 2 == 0) return pre * sign_pow(m / 2) * radial_cos_transform(a, alpha, s, spec);
        return pre * sign_pow((m + 1) / 2) * radial_sin_transform(a, alpha, s, spec);
    }

    if (d == 3 && order == 0) {
        const double pre = sign_pow(k) / (2.0 * pi * pi);
        if (s == 0.0) return pre * radial_moment(2.0 + alpha * k, alpha);
        return pre * radial_sin_transform(1.0 + alpha * k, alpha, s, spec) / s;
    }

    // Polar coordinates with the axis along x. The transverse angles are done
    // in closed form; the polar angle theta is folded onto [0, pi/2].
    double chi = 0.0;
    int e = 0;
    if (d == 2) {
        if (beta[1] % 2) return 0.0;
        chi = 2.0;
        e = beta[1];
    } else {
        if (beta[1] % 2 || beta[2] % 2) return 0.0;
        chi = 2.0 * boost::math::beta(0.5 * (beta[1] + 1), 0.5 * (beta[2] + 1));
        e = 1 + beta[1] + beta[2];
    }
    const int b1 = beta[0];
    const double a = d - 1 + alpha * k + order;
    const double sgn = (b1 % 2 == 0) ? sign_pow(order / 2) : sign_pow((order + 1) / 2);
    const double pre = sign_pow(k) * chi * 2.0 * sgn / std::pow(2.0 * pi, d);

    if (s == 0.0) {
        if (b1 % 2) return 0.0;
        const double angular = 0.5 * boost::math::beta(0.5 * (b1 + 1), 0.5 * (e + 1));
        return pre * angular * radial_moment(a, alpha);
    }

    QuadratureSpec inner = spec;
    auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double w = std::pow(c, b1) * std::pow(std::sin(theta), e);
        if (w == 0.0) return 0.0;
        const double T = (b1 % 2 == 0) ? radial_cos_transform(a, alpha, s * c, inner)
                                       : radial_sin_transform(a, alpha, s * c, inner);
        return w * T;
    };
    thread_local bq::tanh_sinh<double> ts(12);
    const double outer_tol = std::max(10.0 * spec.tolerance, 1e-12);
    return pre * ts.integrate(integrand, 0.0, 0.5 * pi, outer_tol);
}

double fourier_route(const KernelQuery& q, const QuadratureSpec& spec) {
    q.check();
    spec.check();
    const double lambda = q.params.time_scale();
    if (q.t == 0.0)
        throw RouteRequired("contour", "the plain Fourier integral does not converge at t = 0");
    const double alpha = q.params.alpha;
    const int d = q.params.dim;
    const double te = q.t * lambda;
    const double s = q.r * std::pow(te, -1.0 / alpha);
    const double F = fourier_unit_time(alpha, d, s, q.k, q.beta, spec);
    const double scale =
        std::pow(te, -q.k - (d + q.order_beta()) / alpha) * std::pow(lambda, q.k);
    return scale * F;
}

// ---------------------------------------------------------------------------
// Contour route, d = 1.

struct RayShape {
    double a, alpha, tau, sigma, phi;

    double log_mag(double eta) const {
        return a * std::log(eta) - tau * std::pow(eta, alpha) * std::cos(alpha * phi) -
               sigma * eta * std::sin(phi);
    }
    double log_mag_slope(double eta) const {
        return a / eta - tau * alpha * std::pow(eta, alpha - 1.0) * std::cos(alpha * phi) -
               sigma * std::sin(phi);
    }
    double phase_slope(double eta) const {
        return sigma * std::cos(phi) - tau * alpha * std::pow(eta, alpha - 1.0) * std::sin(alpha * phi);
    }
};

// (1/pi) (-1)^k Re[i^m J], J = int_0^inf rho^a e^{-tau rho^alpha + i sigma rho} drho,
// with the ray rotated to arg rho = phi.
template <class Real, unsigned GL>
double contour_sum(const RayShape& ray, int k, int m, int digits) {
    const Real a(ray.a), alpha(ray.alpha), tau(ray.tau), sigma(ray.sigma);
    const Real phi = boost::math::constants::pi<Real>() / (ray.alpha > 1.0 ? 16 * alpha : Real(16));
    const Real ca = cos(alpha * phi), sa = sin(alpha * phi), cp = cos(phi), sp = sin(phi);

    Real re = 0, im = 0;
    auto add_panel = [&](auto&& rule, double lo, double hi) {
        auto fc = [&](const Real& eta) -> Real {
            if (eta <= 0) return a == 0 ? Real(1) : Real(0);
            const Real p = exp(alpha * log(eta));
            return exp(a * log(eta) - tau * p * ca - sigma * eta * sp) * cos(sigma * eta * cp - tau * p * sa);
        };
        auto fs = [&](const Real& eta) -> Real {
            if (eta <= 0) return Real(0);
            const Real p = exp(alpha * log(eta));
            return exp(a * log(eta) - tau * p * ca - sigma * eta * sp) * sin(sigma * eta * cp - tau * p * sa);
        };
        re += rule(fc, Real(lo), Real(hi));
        im += rule(fs, Real(lo), Real(hi));
    };
    auto gl = [](auto&& f, const Real& lo, const Real& hi) {
        return bq::gauss<Real, GL>::integrate(f, lo, hi);
    };

    // Graded panels toward the origin absorb the eta^a and eta^alpha branch
    // points; beyond eta0 panels follow the local oscillation and decay scales.
    const double eta0 = std::min(1.0, 0.5 * pi / std::max(std::abs(ray.phase_slope(1.0)), 1e-300));
    const double tiny = std::pow(10.0, -double(digits + 5) / (ray.a + 1.0));
    for (double hi = eta0; hi > tiny * eta0; hi *= 0.5) add_panel(gl, 0.5 * hi, hi);

    const double drop = (digits + 5) * std::log(10.0);
    double lmax = ray.log_mag(eta0);
    double eta = eta0;
    for (int guard = 0; guard < 200000; ++guard) {
        const double l = ray.log_mag(eta);
        const double slope = ray.log_mag_slope(eta);
        lmax = std::max(lmax, l);
        if (slope < 0.0 && l < lmax - drop) break;
        double w = 0.5 * std::max(eta, 1.0);
        w = std::min(w, pi / std::max(std::abs(ray.phase_slope(eta)), 1e-300));
        w = std::min(w, 3.0 / std::max(std::abs(slope), 1e-300));
        add_panel(gl, eta, eta + w);
        eta += w;
    }

    const Real big_phi = phi * (a + 1);
    const Real re_j = cos(big_phi) * re - sin(big_phi) * im;
    const Real im_j = sin(big_phi) * re + cos(big_phi) * im;
    const Real val = (m % 2 == 0) ? Real(sign_pow(m / 2)) * re_j : Real(sign_pow((m + 1) / 2)) * im_j;
    return static_cast<double>(val * sign_pow(k) / boost::math::constants::pi<Real>());
}

}  // namespace

void KernelQuery::check() const {
    params.check();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("kernel query needs finite t >= 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("kernel query needs finite r >= 0");
    if (t == 0.0 && r == 0.0) throw DomainError("the kernel is singular at (t, x) = (0, 0)");
    if (k < 0) throw DomainError("time derivative order must be nonnegative");
    for (int a = 0; a < 3; ++a) {
        if (beta[a] < 0) throw DomainError("multi-index entries must be nonnegative");
        if (a >= params.dim && beta[a] != 0) throw DomainError("multi-index longer than the dimension");
    }
}

double eval_kernel(const KernelQuery& q, const QuadratureSpec& spec) {
    if (q.k != 0 || q.order_beta() != 0) throw DomainError("eval_kernel takes k = 0 and beta = 0");
    if (q.t <= 0.0) throw DomainError("eval_kernel needs t > 0");
    return fourier_route(q, spec);
}

double eval_time_deriv(const KernelQuery& q, const QuadratureSpec& spec) { return fourier_route(q, spec); }

double eval_space_deriv(const KernelQuery& q, const QuadratureSpec& spec) { return fourier_route(q, spec); }

double eval_kernel_contour(const KernelQuery& q, const QuadratureSpec& spec) {
    q.check();
    spec.check();
    if (q.params.dim != 1) throw UnsupportedRoute("the contour route is one-dimensional");
    if (q.r == 0.0) throw DomainError("the contour route needs r > 0 for damping");
    const double lambda = q.params.time_scale();
    const double alpha = q.params.alpha;
    const int m = q.beta[0];
    const double a = alpha * q.k + m;
    const double phi = std::min(pi / 16.0, pi / (16.0 * alpha));

    RayShape ray{a, alpha, 1.0, 0.0, phi};
    double scale = std::pow(lambda, q.k);
    if (q.t > 0.0) {
        const double te = q.t * lambda;
        ray.sigma = q.r * std::pow(te, -1.0 / alpha);
        scale *= std::pow(te, -q.k - (1.0 + m) / alpha);
    } else {
        ray.tau = 0.0;
        ray.sigma = 1.0;
        scale *= std::pow(q.r, -a - 1.0);
    }

    // Rotating the ray trades oscillation for growth of eta^a before the
    // e^{-sigma eta sin(phi)} damping wins: about (a+1) log10(1/sin phi) digits
    // cancel when tau = 0.
    const double lost = ray.tau == 0.0 ? (a + 1.0) * std::log10(1.0 / std::sin(phi)) : 0.0;
    const bool extended = q.k >= 12 || lost > 7.0;
    if (!extended) return scale * contour_sum<double, 20>(ray, q.k, m, 17);
    const int digits = static_cast<int>(std::ceil(lost)) + 20;
    if (digits <= 50) return scale * contour_sum<mp::cpp_bin_float_50, 30>(ray, q.k, m, digits);
    return scale * contour_sum<mp::cpp_bin_float_100, 30>(ray, q.k, m, std::min(digits, 95));
}

// ---------------------------------------------------------------------------
// eta_1 and subordination.

double eta1_density(double alpha, double s) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("eta1 needs 0 < alpha < 2");
    if (!(s > 0.0)) throw DomainError("eta1 needs s > 0");
    const double rho = 0.5 * alpha;
    // Far tail: the convergent series
    // (1/pi) sum_n (-1)^{n+1} Gamma(n rho + 1) sin(n pi rho) s^{-n rho - 1} / n!
    // has no cancellation once s^{-rho} is small, while the Zolotarev
    // integrand turns into a spike at u = pi.
    const double x = std::pow(s, -rho);
    if (x <= 0.25) {
        double sum = 0.0;
        for (int n = 1; n < 200; ++n) {
            const double mag = std::exp(std::lgamma(n * rho + 1.0) - std::lgamma(n + 1.0) + n * std::log(x));
            const double term = mag * std::sin(n * pi * rho);
            sum += (n % 2 ? term : -term);
            if (mag < 1e-18 * std::abs(sum)) break;
        }
        return sum / (pi * s);
    }
    const double q = 1.0 / (1.0 - rho);
    const double e = rho * q;
    const double sx = std::pow(s, -e);
    // Zolotarev: A(u) = (sin(rho u)/sin u)^q sin((1-rho)u)/sin(rho u)
    auto A = [rho, q](double u) {
        const double sr = std::sin(rho * u);
        return std::pow(sr / std::sin(u), q) * std::sin((1.0 - rho) * u) / sr;
    };
    auto f = [&](double u) {
        if (u <= 0.0) {
            const double a0 = std::pow(rho, q) * (1.0 - rho) / rho;
            return a0 * std::exp(-a0 * sx);
        }
        const double av = A(u);
        const double v = av * std::exp(-av * sx);
        return std::isfinite(v) ? v : 0.0;
    };
    thread_local bq::tanh_sinh<double> ts(15);
    const double integral = ts.integrate(f, 0.0, pi, 1e-14);
    return e / pi * std::pow(s, -q) * integral;
}

double eta1_mode(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("eta1 needs 0 < alpha < 2");
    auto neg_log = [alpha](double ls) {
        const double v = eta1_density(alpha, std::exp(ls));
        return v > 0.0 ? -std::log(v) : 1e300;
    };
    thread_local std::map<double, double> cache;
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    const auto res = boost::math::tools::brent_find_minima(neg_log, -12.0, 6.0, 40);
    return cache[alpha] = std::exp(res.first);
}

double eta1_lower_threshold(double alpha, double s_max) {
    const double c = alpha / (4.0 * std::tgamma(1.0 - 0.5 * alpha));
    auto holds = [&](double s) { return eta1_density(alpha, s) >= c * std::pow(s, -1.0 - 0.5 * alpha); };
    if (!holds(s_max)) return std::numeric_limits<double>::infinity();
    double s0 = s_max;
    const double ratio = std::pow(10.0, 0.05);
    for (double s = s_max / ratio; s >= 1e-6; s /= ratio) {
        if (!holds(s)) break;
        s0 = s;
    }
    return s0;
}

double eval_kernel_subordination(const KernelQuery& q, const QuadratureSpec& spec) {
    q.check();
    spec.check();
    if (q.k != 0 || q.order_beta() != 0) throw DomainError("subordination route takes k = 0 and beta = 0");
    if (!(q.t > 0.0)) throw DomainError("subordination route needs t > 0");
    const double lambda = q.params.time_scale();
    const double alpha = q.params.alpha;
    const int d = q.params.dim;
    const double te = q.t * lambda;
    if (alpha == 2.0) return gaussian_kernel_radial(te, q.r, d);

    // In v = log s the integrand is a single smooth bump: eta1 dies
    // doubly-exponentially on the left, and the product decays like
    // s^{-(alpha+d)/2} on the right. Break points at the eta1 mode and at the
    // peak of the Gaussian factor keep tanh-sinh from missing either bump.
    const double tt = std::pow(te, 2.0 / alpha);
    auto integrand = [&](double v) {
        const double s = std::exp(v);
        const double eta = eta1_density(alpha, s);
        if (eta == 0.0) return 0.0;
        const double val = gaussian_kernel_radial(tt * s, q.r, d) * eta * s;
        return std::isfinite(val) ? val : 0.0;
    };
    const double v_mode = std::log(eta1_mode(alpha));
    const double v_lo = -(2.0 / alpha) * std::log(800.0);
    double v_gauss = v_mode;
    if (q.r > 0.0) v_gauss = std::log(q.r * q.r / (4.0 * tt * (0.5 * d + 0.5 * alpha)));
    const double v_hi = std::max(v_mode, v_gauss) + 2.0 * 45.0 / (alpha + d);
    std::vector<double> cuts{v_lo, v_mode, v_gauss, v_hi};
    std::sort(cuts.begin(), cuts.end());
    const double tol = std::max(spec.tolerance, 1e-11);
    thread_local bq::tanh_sinh<double> ts(15);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = std::max(cuts[i], v_lo);
        const double hi = cuts[i + 1];
        if (hi > lo) sum += ts.integrate(integrand, lo, hi, tol);
    }
    return sum;
}

}  // namespace fhk
