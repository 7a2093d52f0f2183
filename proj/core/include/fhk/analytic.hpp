#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fhk/errors.hpp"
#include "fhk/operator.hpp"

namespace fhk {

enum class SeriesSign {
    Forward,   ///< du/dt = G u, a_{j+1} = G a_j
    Backward,  ///< du/dt = -G u, a_{j+1} = -G a_j
};

/// Time Taylor series u(t0 + s) = sum_j a_j s^j / j! with a_0 given.
struct TaylorSeries {
    double center = 0.0;
    std::vector<Field> coeffs;
    std::vector<double> sup_norms;  ///< weighted sup norms of coeffs
    SeriesSign sign = SeriesSign::Forward;
    GrowthWeight weight{1.0, 0.5};

    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    /// Recomputes the weighted sup norms from the coefficients.
    std::vector<double> recompute_norms() const;
};

/// Thrown when the operator fails while building coefficient j.
class SeriesStepFailure : public Error {
public:
    SeriesStepFailure(int j, const std::string& what)
        : Error("taylor coefficient " + std::to_string(j) + ": " + what), j_(j) {}
    int step() const noexcept { return j_; }

private:
    int j_;
};

/// Relative size below which Fourier coefficients of a0 count as rounding
/// noise on the spectral route.
inline constexpr double spectral_noise_floor = 1e-13;

/// a_0 = a0, a_{j+1} = +-G a_j. Spectral handles apply the multiplier powers
/// directly to the spectrum of a0 (after clearing coefficients below
/// spectral_noise_floor times the largest); other handles iterate G.apply.
TaylorSeries taylor_coeffs(const Field& a0, const OperatorHandle& G, int J, SeriesSign sign,
                           std::optional<GrowthWeight> weight = std::nullopt, double center = 0.0);

struct GateReport {
    bool pass = false;
    bool bounded = false;
    double A_est = 0.0;
    /// Largest ratio rho_j(fine) / rho_j(coarse) over j >= 1.
    double refinement_growth = 0.0;
    double growth_limit = 1.25;
    std::vector<double> ratios;          ///< rho_j = (|a_j|_w / j^j)^{1/(j+1)}, coarse run
    std::vector<double> refined_ratios;  ///< same on the refined run
    std::vector<std::pair<int, double>> trace;  ///< (nodes per axis, A_est)
};

/// rho_j for one series.
std::vector<double> growth_ratios(const TaylorSeries& s);

/// Gate on the coefficient growth |a_j|_w <= A^{j+1} j^j. Needs the same data
/// expanded on one refined grid: band-limited data always looks bounded at a
/// fixed resolution, so failure is detected as instability of rho_j under
/// refinement.
GateReport growth_gate(const TaylorSeries& coarse, const TaylorSeries& refined, double growth_limit = 1.25);

struct SeriesValue {
    double value = 0.0;
    double truncation_bound = 0.0;
    bool beyond_radius = false;  ///< |dt| >= 1/(e A_est): warning only
};

/// sum_{j <= J} a_j(x) dt^j / j! at the grid node nearest to x. The bound is
/// the first omitted term under the model A^{J+2} (J+1)^{J+1} |dt|^{J+1}/(J+1)!.
SeriesValue evaluate_series(const TaylorSeries& s, double dt, const Point& x);
/// Whole-field partial sum.
Field evaluate_series(const TaylorSeries& s, double dt);

/// Radius of convergence of sum c_j s^j with c_j = derivs[j] / j!. Fits
/// log|c_j| over the upper half of the indices (zeros skipped) against
/// {1, j, j log j}, after removing numerical zeros as in gevrey_fit; a clearly
/// negative j log j coefficient means the terms
/// decay faster than any geometric sequence, reported as +infinity.
double radius_estimate(std::span<const double> derivs);
double radius_estimate(const TaylorSeries& s, const Point& x);

struct GevreyFit {
    double sigma = 0.0;
    double log_prefactor = 0.0;  ///< coefficient of k
    double intercept = 0.0;
    double residual = 0.0;       ///< rms residual of the retained points
    int k_min = 0;
    int k_max = 0;
    std::vector<int> used;
};

/// Least squares log d_k = sigma log k! + c k + c0 over d_k > 0. Numerical
/// zeros (e.g. where sin(pi alpha k / 2) vanishes) are removed one at a time
/// while the worst residual lies more than three decades below the fit.
/// Throws InsufficientData with fewer than eight usable points.
GevreyFit gevrey_fit(std::span<const double> d, std::span<const int> k);

/// |d^k/dt^k p_alpha(0, x)| for k = 1..k_max (d = 1). alpha < 2 uses the
/// contour route at t = 0; alpha = 2, whose derivatives all vanish at t = 0,
/// uses the supremum over a logarithmic grid t in [1e-3, 3].
std::vector<double> time_derivative_sequence(double alpha, double x, int k_max);
/// |d^m/dx^m p_alpha(t, 0)| for even m = 2..m_max (d = 1).
std::vector<double> space_derivative_sequence(double alpha, double t, int m_max);

struct BackwardCertificate {
    GateReport gate;
    double A_est = 0.0;
    double truncation_bound = 0.0;
};

struct BackwardResult {
    Field field;
    BackwardCertificate certificate;
};

/// Thrown when the growth gate refuses the terminal data.
class BackwardIllPosed : public Error {
public:
    explicit BackwardIllPosed(GateReport r)
        : Error("backward-ill-posed: coefficient growth unstable under refinement"), report_(std::move(r)) {}
    const GateReport& report() const noexcept { return report_; }

private:
    GateReport report_;
};

/// u(T - delta) from u(T) by the backward series. uT_refined is the same
/// terminal data on the refined grid, used only by the gate. Constant-kappa
/// spectral handles sum the series mode by mode.
BackwardResult backward_solve(const Field& uT, const Field& uT_refined, const OperatorHandle& G, double delta, int J);

}  // namespace fhk
