#pragma once

#include <array>

#include "fhk/params.hpp"
#include "fhk/quadrature.hpp"

namespace fhk {

/// One evaluation of d^k/dt^k d^beta/dx^beta p_alpha(t, x) at x = r e_1.
/// Only constant kappa is supported; the generator is then kappa/c_{d,alpha}
/// times the fractional Laplacian, i.e. time runs kappa/c_{d,alpha} faster.
/// Routes assume the canonical normalisation kappa = c_{d,alpha}, so the
/// Fourier symbol is exp(-t |xi|^alpha); other constants rescale t.
struct KernelQuery {
    KernelParams params;
    double t = 1.0;
    double r = 0.0;
    int k = 0;
    std::array<int, 3> beta{0, 0, 0};

    int order_beta() const noexcept { return beta[0] + beta[1] + beta[2]; }
    void check() const;
};

/// Fourier route, k = 0 and beta = 0 required.
double eval_kernel(const KernelQuery& q, const QuadratureSpec& spec = {});

/// Fourier route for d^k/dt^k d^beta p. Throws RouteRequired("contour") at
/// t = 0, where the plain integral is not absolutely convergent.
double eval_time_deriv(const KernelQuery& q, const QuadratureSpec& spec = {});
double eval_space_deriv(const KernelQuery& q, const QuadratureSpec& spec = {});

/// d = 1 only: the same integral along the rays arg xi = +-phi,
/// phi = min(pi/16, pi/(16 alpha)). Legal for t >= 0 and r > 0, any k and
/// beta. Switches to 50 or 100 digit arithmetic when k >= 12 or when the
/// estimated cancellation exceeds seven digits.
double eval_kernel_contour(const KernelQuery& q, const QuadratureSpec& spec = {});

/// Density of the one-sided stable law with Laplace transform
/// exp(-lambda^{alpha/2}), alpha in (0, 2).
double eta1_density(double alpha, double s);
/// Location of the maximum of eta1_density.
double eta1_mode(double alpha);
/// Empirical threshold s0 (searched on a log grid up to s_max) beyond which
/// eta1(s) >= alpha s^{-1-alpha/2} / (4 Gamma(1 - alpha/2)) holds on every
/// grid point. Returns +inf if the inequality fails at s_max.
double eta1_lower_threshold(double alpha, double s_max = 1e6);

/// int_0^inf gaussian(t^{2/alpha} s, r) eta1(s) ds; k = 0 and beta = 0 required.
double eval_kernel_subordination(const KernelQuery& q, const QuadratureSpec& spec = {});

}  // namespace fhk
