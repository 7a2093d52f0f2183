#pragma once

namespace fhk {

/// Node count (0 = adaptive), frequency truncation radius (0 = derive from
/// the tail bound) and relative tolerance target for one radial integral.
struct QuadratureSpec {
    int nodes = 0;
    double truncation = 0.0;
    double tolerance = 1e-13;

    void check() const;
};

/// Smallest P with int_P^inf rho^a exp(-rho^alpha) drho below tol/2 times the
/// full moment Gamma((a+1)/alpha)/alpha.
double moment_truncation(double a, double alpha, double tol);

/// int_0^inf rho^a exp(-rho^alpha) drho = Gamma((a+1)/alpha) / alpha.
double radial_moment(double a, double alpha);

/// int_0^inf rho^a exp(-rho^alpha) cos(omega rho) drho and the sin analogue.
/// Large omega*P goes through Ooura's double-exponential Fourier rule, small
/// omega*P through tanh-sinh on half-period panels of [0, P].
double radial_cos_transform(double a, double alpha, double omega, const QuadratureSpec& q = {});
double radial_sin_transform(double a, double alpha, double omega, const QuadratureSpec& q = {});

}  // namespace fhk
