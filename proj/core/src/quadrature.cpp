#include "fhk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fhk/errors.hpp"

namespace fhk {

namespace bq = boost::math::quadrature;

void QuadratureSpec::check() const {
    if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (nodes < 0) throw DomainError("quadrature node count must be nonnegative");
    if (truncation < 0.0) throw DomainError("truncation radius must be nonnegative");
}

double radial_moment(double a, double alpha) {
    return std::exp(std::lgamma((a + 1.0) / alpha)) / alpha;
}

double moment_truncation(double a, double alpha, double tol) {
    // int_P^inf rho^a e^{-rho^alpha} = Gamma((a+1)/alpha, P^alpha) / alpha
    const double shape = (a + 1.0) / alpha;
    const double target = std::max(0.5 * tol, 1e-300);
    const double u = boost::math::gamma_q_inv(shape, target);
    return std::pow(u, 1.0 / alpha);
}

namespace {

enum class Kind { Cos, Sin };

// Boost's Ooura integrators adapt their starting level to earlier calls (the
// state is shared between copies), which makes results depend on call history.
// A fresh integrator per call keeps every evaluation reproducible.
bq::tanh_sinh<double>& tanh_sinh_rule() {
    thread_local bq::tanh_sinh<double> ts(15);
    return ts;
}

double transform(Kind kind, double a, double alpha, double omega, const QuadratureSpec& q) {
    q.check();
    if (!(alpha > 0.0)) throw DomainError("radial transform needs alpha > 0");
    if (a <= -1.0) throw DomainError("radial weight rho^a needs a > -1");
    double sign = 1.0;
    if (omega < 0.0) {
        omega = -omega;
        if (kind == Kind::Sin) sign = -1.0;
    }
    if (omega == 0.0) return kind == Kind::Cos ? radial_moment(a, alpha) : 0.0;

    auto weight = [a, alpha](double rho) {
        if (rho <= 0.0) return a == 0.0 ? 1.0 : 0.0;
        return std::exp(a * std::log(rho) - std::pow(rho, alpha));
    };
    auto osc = [kind, omega](double rho) {
        return kind == Kind::Cos ? std::cos(omega * rho) : std::sin(omega * rho);
    };

    const double P = q.truncation > 0.0 ? q.truncation : moment_truncation(a, alpha, q.tolerance);

    if (q.nodes > 0) {
        const int panels = std::max(1, (q.nodes + 19) / 20);
        const double w = P / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) {
            sum += bq::gauss<double, 20>::integrate(
                [&](double rho) { return weight(rho) * osc(rho); }, i * w, (i + 1) * w);
        }
        return sign * sum;
    }

    const double half_period = std::numbers::pi / omega;
    if (P / half_period <= 16.0) {
        auto& ts = tanh_sinh_rule();
        double sum = 0.0;
        for (double lo = 0.0; lo < P; lo += half_period) {
            const double hi = std::min(P, lo + half_period);
            sum += ts.integrate([&](double rho) { return weight(rho) * osc(rho); }, lo, hi,
                                q.tolerance);
        }
        return sign * sum;
    }

    // The weight is not smooth at rho = 0 unless alpha and a are integers: take the
    // first half periods by tanh-sinh and hand the smooth shifted tail to Ooura.
    auto& ts = tanh_sinh_rule();
    const int n0 = std::clamp(static_cast<int>(std::ceil(1.0 / half_period)), 2, 8);
    double head = 0.0;
    for (int i = 0; i < n0; ++i)
        head += ts.integrate([&](double rho) { return weight(rho) * osc(rho); }, i * half_period,
                             (i + 1) * half_period, q.tolerance);
    const double P0 = n0 * half_period;
    const double panels = std::ceil((P - P0) / half_period);
    if (panels <= 4000.0) {
        double tail = 0.0;
        for (int i = 0; i < static_cast<int>(panels); ++i)
            tail += bq::gauss<double, 20>::integrate([&](double rho) { return weight(rho) * osc(rho); },
                                                     P0 + i * half_period, P0 + (i + 1) * half_period);
        return sign * (head + tail);
    }
    auto shifted = [&](double x) { return weight(P0 + x); };
    const double tail = kind == Kind::Cos ? bq::ooura_fourier_cos<double>(q.tolerance, 8).integrate(shifted, omega).first
                                          : bq::ooura_fourier_sin<double>(q.tolerance, 8).integrate(shifted, omega).first;
    return sign * (head + ((n0 % 2) ? -tail : tail));
}

}  // namespace

double radial_cos_transform(double a, double alpha, double omega, const QuadratureSpec& q) {
    return transform(Kind::Cos, a, alpha, omega, q);
}

double radial_sin_transform(double a, double alpha, double omega, const QuadratureSpec& q) {
    return transform(Kind::Sin, a, alpha, omega, q);
}

}  // namespace fhk
