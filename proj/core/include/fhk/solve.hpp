#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhk/errors.hpp"
#include "fhk/operator.hpp"

namespace fhk {

/// p = num / den > 0.
struct Rational {
    long num = 1;
    long den = 1;

    double value() const { return double(num) / double(den); }
    bool is_integer() const { return den == 1 || num % den == 0; }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

enum class EvolveMethod { SpectralExact, MolExplicit };

struct EvolveSpec {
    EvolveMethod method = EvolveMethod::SpectralExact;
    /// mol only; 0 selects cfl_fraction / lambda_max.
    double dt = 0.0;
    /// Default step as a fraction of 1 / lambda_max, lambda_max the spectral
    /// radius bound of the operator. Explicit midpoint is stable up to 2.
    double cfl_fraction = 0.5;
};

struct EvolveResult {
    Field field;
    int steps = 0;
    double dt = 0.0;
    /// dt = c_cfl h^alpha.
    double c_cfl = 0.0;
    /// sup u never increased between steps.
    bool sup_monotone = true;
    std::vector<double> sup_trace;
};

/// Largest stable explicit-midpoint step for G: 2 / lambda_max.
double admissible_dt(const OperatorHandle& G);

/// du/dt = G u. SpectralExact multiplies mode n by exp(-t scale |n|^alpha)
/// (needs a spectral handle or a singular handle with constant kappa on the
/// torus). MolExplicit steps with explicit midpoint using G.apply and throws
/// CflViolation above admissible_dt(G).
EvolveResult evolve_mild(const Field& u0, double t, const OperatorHandle& G, const EvolveSpec& spec = {});

/// Explicit midpoint with the singular-integral route for a general kappa.
/// Validates kappa first (DomainError carrying the failed condition).
EvolveResult evolve_variable_kappa(const Field& u0, double t, const KernelParams& p, double dt = 0.0,
                                   SingularOptions opts = {});

/// Discrete symbol of a translation-invariant operator on the 1-D torus:
/// entry n (0 <= n <= N/2) is the eigenvalue of G on cos(n x).
std::vector<double> discrete_symbol(const OperatorHandle& G);

/// A-priori error of the explicit-midpoint run against the exact semigroup,
/// mode by mode: |u0^(n)| |R(mu_n dt)^{steps} - exp(-t lambda_n)| summed,
/// where mu_n is the discrete symbol of G_mol, lambda_n the exact one and R
/// the midpoint amplification factor. Constant kappa, 1-D torus.
double mol_error_model(const Field& u0, double t, const OperatorHandle& G_mol, double dt);

struct DuhamelResult {
    Field field;
    int steps = 0;
    int picard_iterations = 0;
    /// Largest ratio of successive Picard corrections over all steps.
    double contraction = 0.0;
    std::vector<double> sup_trace;
};

class DuhamelDivergence : public Error {
public:
    DuhamelDivergence(const std::string& what, std::vector<double> trace)
        : Error(what), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

/// Mild solution of du/dt = G u + u^p on the spectral semigroup of G (spectral
/// handle). Each step solves u1 = E u0 + dt/2 (E N(u0) + N(u1)), E = exp(dt G),
/// by Picard iteration to `tol`. Non-integer p needs u bounded away from 0.
DuhamelResult duhamel_nonlinear(const Field& u0, double t, Rational p, int n_steps, const OperatorHandle& G,
                                double tol = 1e-14);

enum class Geometry { Euclid, Torus };

struct BoundGrid {
    double t_min = 0.1;
    double t_max = 1.0;
    int t_points = 5;
    /// Euclid: distances y t^{1/alpha} with y = 0 and y log-spaced in
    /// [y_min, y_max], `per_decade` points per decade.
    double y_min = 1e-2;
    double y_max = 1e2;
    int per_decade = 4;
    /// Torus: distances in [0, pi].
    int torus_points = 33;
    /// Torus: mode cutoff; 0 picks the smallest with a negligible tail.
    long modes = 0;
};

struct BoundReport {
    Geometry geometry = Geometry::Euclid;
    double alpha = 1.0;
    int k = 0;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    /// Same quantities on the refined grid (euclid: doubled range and
    /// resolution in y, t; torus: doubled mode cutoff).
    double refined_min = 0.0;
    double refined_max = 0.0;
    double drift_min = 0.0;
    double drift_max = 0.0;
    double drift_limit = 0.1;
    /// k = 0: C1 = ratio_min, C2 = ratio_max. k >= 1: C = ratio_max^{1/(k+1)}.
    double C_lower = 0.0;
    double C_upper = 0.0;
    std::string grid;
    bool pass = false;
};

/// Ratio of |d^k/dt^k p| to the envelope, extremised over a (t, distance) grid.
/// Euclid: |d_t^k p| t^{k-1} (t^{1/alpha} + dist)^{d+alpha} / k^k.
/// Torus (d = 1): |d_t^k p| t^{k-1} (dist^alpha + t) |B(dist + t^{1/alpha})| / k!.
/// k = 0 is two-sided and requires both ends stable; for k >= 1 the bound is an
/// upper bound, so only ratio_max has to be stable.
BoundReport bound_check(const KernelParams& p, Geometry g, int k, const BoundGrid& grid = {});

/// Torus kernel derivative sum_n (-|n|^alpha)^k exp(-t |n|^alpha) cos(n x) / (2 pi).
double torus_kernel_derivative(double alpha, int k, double t, double x, long modes);
/// Smallest cutoff with a relative tail below about 1e-16 at t.
long torus_mode_cutoff(double alpha, int k, double t);

}  // namespace fhk
