#pragma once

#include <memory>

#include "fhk/field.hpp"
#include "fhk/params.hpp"

namespace fhk {

enum class OperatorRoute { Spectral, SingularIntegral };

struct SingularOptions {
    int images = 2;             ///< periodic images summed explicitly before the lattice tail
    int gauss_nodes = 8;        ///< Gauss-Legendre nodes per panel
    int graded_panels = 3;      ///< panels [h 2^j, h 2^{j+1}] before uniform width-h panels
    double boundary_tol = 1e-8; ///< truncated line: |f| at the box edge relative to sup|f|
};

/// L_alpha^kappa bound to a grid. Spectral handles apply
/// G = -scale * (-Laplacian)^{alpha/2} (alpha = 2 allowed); singular-integral
/// handles apply the symmetrised principal-value integral with kappa.
class OperatorHandle {
public:
    static OperatorHandle spectral(double alpha, const Grid& grid, double scale = 1.0);
    /// Constant kappa only; scale = kappa / c_{d,alpha}.
    static OperatorHandle spectral(const KernelParams& p, const Grid& grid);
    static OperatorHandle singular(const KernelParams& p, const Grid& grid, SingularOptions opts = {});

    OperatorRoute route() const noexcept { return route_; }
    const KernelParams& params() const noexcept { return params_; }
    const Grid& grid() const noexcept { return grid_; }
    double alpha() const noexcept { return params_.alpha; }
    /// c_{d,alpha} for alpha < 2, else 1.
    double normalization() const noexcept { return c_; }
    /// Multiplier of -(-Laplacian)^{alpha/2} for constant kappa (kappa / c).
    double scale() const noexcept { return scale_; }

    /// Upper bound on the spectral radius of G on this grid:
    /// (kappa_max / c) (pi sqrt(d) / h)^alpha.
    double spectral_radius_bound() const;

    Field apply(const Field& f) const;
    /// The same operator (route, kappa, options) bound to another grid.
    OperatorHandle on_grid(const Grid& g) const;
    const SingularOptions& options() const noexcept { return opts_; }

private:
    struct Tables;
    friend Field apply_singular(const Field& f, const OperatorHandle& h);
    OperatorHandle() = default;

    OperatorRoute route_ = OperatorRoute::Spectral;
    KernelParams params_;
    Grid grid_ = Grid::torus(1, 8);
    double c_ = 1.0;
    double scale_ = 1.0;
    SingularOptions opts_;
    std::shared_ptr<const Tables> tables_;
};

/// +(-Laplacian)^{alpha/2}: Fourier coefficient f(n) times |n|^alpha.
Field apply_spectral(const Field& f, double alpha);

/// Singular-integral route of the handle (equivalent to h.apply for such handles).
Field apply_singular(const Field& f, const OperatorHandle& h);

/// c_{d,alpha} from the plane-wave relation by quadrature, cross-checked
/// against the closed form. Refuses alpha >= 2 - 1e-3.
double calibrate_constant(double alpha, int d);

}  // namespace fhk
