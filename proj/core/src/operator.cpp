#include "fhk/operator.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fhk/errors.hpp"
#include "fhk/spectral.hpp"

namespace fhk {

namespace bq = boost::math::quadrature;

namespace {

constexpr double pi = std::numbers::pi;

struct Node {
    double u;
    double w;
};

// Gauss-Legendre nodes for [lo, hi] with n in {4, 6, 8, 10, 12, 16, 20}.
template <unsigned N>
void push_panel(std::vector<Node>& out, double lo, double hi) {
    const auto& x = bq::gauss<double, N>::abscissa();
    const auto& w = bq::gauss<double, N>::weights();
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    // Boost stores the nonnegative half of the symmetric rule.
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            out.push_back({c, r * w[i]});
        } else {
            out.push_back({c - r * x[i], r * w[i]});
            out.push_back({c + r * x[i], r * w[i]});
        }
    }
}

void panel(std::vector<Node>& out, int n, double lo, double hi) {
    switch (n) {
        case 4: push_panel<4>(out, lo, hi); break;
        case 6: push_panel<6>(out, lo, hi); break;
        case 8: push_panel<8>(out, lo, hi); break;
        case 10: push_panel<10>(out, lo, hi); break;
        case 12: push_panel<12>(out, lo, hi); break;
        case 16: push_panel<16>(out, lo, hi); break;
        case 20: push_panel<20>(out, lo, hi); break;
        default: throw DomainError("gauss_nodes must be one of 4, 6, 8, 10, 12, 16, 20");
    }
}

// Gauss-Jacobi rule for int_0^h F(z) z^beta dz (beta > -1), by Golub-Welsch on
// the Jacobi recurrence with weight (1+s)^beta on [-1, 1].
std::vector<Node> jacobi_cell(int n, double beta, double h) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + beta;
        J(k, k) = k == 0 ? beta / (beta + 2.0) : beta * beta / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = k + 1.0, t = 2.0 * m + beta;
            const double b = 4.0 * m * m * (m + beta) * (m + beta) / (t * t * (t + 1.0) * (t - 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(b);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::pow(2.0, beta + 1.0) / (beta + 1.0);
    const double scale = std::pow(0.5 * h, beta + 1.0);
    std::vector<Node> out;
    for (int k = 0; k < n; ++k) {
        const double v = es.eigenvectors()(0, k);
        out.push_back({0.5 * h * (1.0 + es.eigenvalues()(k)), scale * mu0 * v * v});
    }
    return out;
}

// Near cell [0, h] by Gauss-Jacobi with weight z^{1-alpha}; the weights carry
// z^{alpha-1} so every node multiplies the full kernel. Then graded panels h 2^j up to h 2^graded, then uniform width-h panels up to `end`.
std::vector<Node> radial_nodes(double h, double end, double alpha, const SingularOptions& o, bool near = true) {
    std::vector<Node> nodes;
    if (near) nodes = jacobi_cell(o.gauss_nodes, 1.0 - alpha, h);
    for (Node& nd : nodes) nd.w *= std::pow(nd.u, alpha - 1.0);
    double lo = h;
    for (int j = 0; j < o.graded_panels && lo < end; ++j) {
        const double hi = std::min(2.0 * lo, end);
        panel(nodes, o.gauss_nodes, lo, hi);
        lo = hi;
    }
    while (lo < end * (1.0 - 1e-14)) {
        const double hi = std::min(lo + h, end);
        panel(nodes, o.gauss_nodes, lo, hi);
        lo = hi;
    }
    return nodes;
}

double kappa_at(const Coefficient& k, double x, double u) { return k(Point{x, 0.0, 0.0}, Point{u, 0.0, 0.0}); }

}  // namespace

struct OperatorHandle::Tables {
    // Torus: total periodic kernel on the folded interval (0, pi].
    std::vector<Node> nodes;
    std::vector<double> kernel;  // [i * nodes + q] (or [q] when kappa is constant)
    bool per_point = false;
};

OperatorHandle OperatorHandle::spectral(double alpha, const Grid& grid, double scale) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (!grid.periodic()) throw UnsupportedRoute("the spectral route needs a periodic grid");
    if (!(scale > 0.0)) throw DomainError("operator scale must be positive");
    OperatorHandle h;
    h.route_ = OperatorRoute::Spectral;
    h.params_.alpha = alpha;
    h.params_.dim = grid.dim();
    h.grid_ = grid;
    h.c_ = alpha < 2.0 ? fractional_laplacian_constant(alpha, grid.dim()) : 1.0;
    h.scale_ = scale;
    if (scale != 1.0) h.params_.kappa = Coefficient::constant(scale * h.c_);
    return h;
}

OperatorHandle OperatorHandle::spectral(const KernelParams& p, const Grid& grid) {
    p.check();
    if (p.dim != grid.dim()) throw DomainError("operator and grid dimensions differ");
    return spectral(p.alpha, grid, p.time_scale());
}

OperatorHandle OperatorHandle::singular(const KernelParams& p, const Grid& grid, SingularOptions opts) {
    p.check_nonlocal();
    if (p.dim != grid.dim()) throw DomainError("operator and grid dimensions differ");
    if (grid.dim() != 1) throw UnsupportedRoute("the singular-integral route is implemented for d = 1");
    if (opts.images < 0) throw DomainError("image count must be nonnegative");
    OperatorHandle h;
    h.route_ = OperatorRoute::SingularIntegral;
    h.params_ = p;
    h.grid_ = grid;
    h.opts_ = opts;
    h.c_ = fractional_laplacian_constant(p.alpha, p.dim);
    const Coefficient kappa = p.resolved_kappa();
    h.scale_ = kappa.is_constant() ? kappa.constant_value() / h.c_ : kappa.bounds().upper / h.c_;

    if (grid.periodic()) {
        auto t = std::make_shared<Tables>();
        const double hh = grid.spacing();
        const double a = p.alpha;
        const int m = opts.images;
        t->nodes = radial_nodes(hh, pi, a, opts);
        t->per_point = !kappa.is_constant();
        const int npts = t->per_point ? grid.nodes_per_axis() : 1;
        const double tail_pre = std::pow(2.0 * pi, -1.0 - a);
        // Sum over periodic images of the folded variable v in (0, pi].
        auto total = [&](double x, double v) {
            double s = 0.0;
            for (int l = 0; l <= m; ++l) {
                const double z1 = v + 2.0 * pi * l, z2 = 2.0 * pi - v + 2.0 * pi * l;
                s += kappa_at(kappa, x, z1) * std::pow(z1, -1.0 - a);
                s += kappa_at(kappa, x, z2) * std::pow(z2, -1.0 - a);
            }
            const double q1 = v / (2.0 * pi) + m + 1, q2 = (2.0 * pi - v) / (2.0 * pi) + m + 1;
            s += kappa_at(kappa, x, 2.0 * pi * q1) * tail_pre * gsl_sf_hzeta(1.0 + a, q1);
            s += kappa_at(kappa, x, 2.0 * pi * q2) * tail_pre * gsl_sf_hzeta(1.0 + a, q2);
            return s;
        };
        t->kernel.resize(static_cast<std::size_t>(npts) * t->nodes.size());
        for (int i = 0; i < npts; ++i) {
            const double x = t->per_point ? grid.coordinate(i) : 0.0;
            for (std::size_t q = 0; q < t->nodes.size(); ++q)
                t->kernel[i * t->nodes.size() + q] = t->nodes[q].w * total(x, t->nodes[q].u);
        }
        h.tables_ = t;
    }
    return h;
}

double OperatorHandle::spectral_radius_bound() const {
    const double k = std::pow(std::sqrt(double(grid_.dim())) * pi / grid_.spacing(), params_.alpha);
    return scale_ * k;
}

Field OperatorHandle::apply(const Field& f) const {
    if (!(f.grid() == grid_)) throw DomainError("field grid does not match the operator grid");
    if (route_ == OperatorRoute::Spectral) {
        const double a = params_.alpha, s = scale_;
        return spectral_multiply(f, [a, s](double n2) { return n2 == 0.0 ? 0.0 : -s * std::pow(n2, 0.5 * a); });
    }
    return apply_singular(f, *this);
}

OperatorHandle OperatorHandle::on_grid(const Grid& g) const {
    if (route_ == OperatorRoute::Spectral) return spectral(params_.alpha, g, scale_);
    return singular(params_, g, opts_);
}

Field apply_spectral(const Field& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (!f.grid().periodic()) throw UnsupportedRoute("apply_spectral needs a periodic grid");
    return spectral_multiply(f, [alpha](double n2) { return n2 == 0.0 ? 0.0 : std::pow(n2, 0.5 * alpha); });
}

Field apply_singular(const Field& f, const OperatorHandle& h) {
    if (h.route() != OperatorRoute::SingularIntegral) throw DomainError("handle is not a singular-integral handle");
    const Grid& g = h.grid();
    if (!(f.grid() == g)) throw DomainError("field grid does not match the operator grid");
    const int n = g.nodes_per_axis();
    const double hh = g.spacing();
    const double a = h.alpha();
    std::vector<double> out(n, 0.0);

    if (g.periodic()) {
        const auto& t = *h.tables_;
        const Spectrum spec = Spectrum::forward(f);
        const std::size_t nq = t.nodes.size();
        for (std::size_t q = 0; q < nq; ++q) {
            const Field plus = periodic_shift(spec, t.nodes[q].u);
            const Field minus = periodic_shift(spec, -t.nodes[q].u);
            for (int i = 0; i < n; ++i) {
                const double k = t.per_point ? t.kernel[i * nq + q] : t.kernel[q];
                out[i] += (plus[i] + minus[i] - 2.0 * f[i]) * k;
            }
        }
        return Field(g, std::move(out));
    }

    // Truncated line: f vanishes outside the box, off-grid values by local cubics.
    const double R = g.extent();
    const double edge = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[n - 2]), std::abs(f[n - 1])});
    if (edge > h.options().boundary_tol * f.sup_norm())
        throw QuadratureFailure("field does not decay at the edge of the truncated line");
    auto at = [&](int j) { return (j < 0 || j >= n) ? 0.0 : f[j]; };
    auto interp = [&](double y) {
        const double s = (y + R) / hh;
        if (s <= -1.0 || s >= n) return 0.0;
        const int j = static_cast<int>(std::floor(s));
        const double u = s - j;
        const double l0 = -u * (u - 1.0) * (u - 2.0) / 6.0, l1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
                     l2 = -(u + 1.0) * u * (u - 2.0) / 2.0, l3 = (u + 1.0) * u * (u - 1.0) / 6.0;
        return l0 * at(j - 1) + l1 * at(j) + l2 * at(j + 1) + l3 * at(j + 2);
    };
    const Coefficient kappa = h.params().resolved_kappa();
    const SingularOptions& o = h.options();
    // Near cell from the centred quartic through f[i-2..i+2]: D(z)/z^2 = p''(0) + p''''(0) z^2 / 12.
    const std::vector<Node> cell = jacobi_cell(o.gauss_nodes, 1.0 - a, hh);
    for (int i = 0; i < n; ++i) {
        const double x = g.coordinate(i);
        const double Z = R + std::abs(x);
        double s = 0.0;
        const double p2 = (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * f[i] + 16.0 * at(i - 1) - at(i - 2)) / (12.0 * hh * hh);
        const double p4 = (at(i + 2) - 4.0 * at(i + 1) + 6.0 * f[i] - 4.0 * at(i - 1) + at(i - 2)) / (hh * hh * hh * hh);
        for (const Node& nd : cell) s += nd.w * (p2 + p4 * nd.u * nd.u / 12.0) * kappa_at(kappa, x, nd.u);
        for (const Node& nd : radial_nodes(hh, Z, a, o, false))
            s += nd.w * (interp(x + nd.u) + interp(x - nd.u) - 2.0 * f[i]) * kappa_at(kappa, x, nd.u) *
                 std::pow(nd.u, -1.0 - a);
        s += -2.0 * f[i] * kappa_at(kappa, x, Z) * std::pow(Z, -a) / a;
        out[i] = s;
    }
    return Field(g, std::move(out));
}

double calibrate_constant(double alpha, int d) {
    if (!(alpha > 0.0) || alpha >= 2.0 - 1e-3)
        throw DomainError("calibration refuses alpha outside (0, 2 - 1e-3): Gamma(-alpha/2) has a pole at 2");
    if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
    // J = int_0^inf (1 - cos r) r^{-1-alpha} dr = (1/alpha) int_0^inf r^{-alpha} sin r dr
    bq::ooura_fourier_sin<double> os(1e-13, 10);
    const double J = os.integrate([alpha](double r) { return std::pow(r, -alpha); }, 1.0).first / alpha;
    bq::tanh_sinh<double> ts;
    double angular = 2.0;
    if (d == 2) angular = 4.0 * ts.integrate([alpha](double th) { return std::pow(std::cos(th), alpha); }, 0.0, 0.5 * pi);
    if (d == 3)
        angular = 4.0 * pi * ts.integrate([alpha](double th) { return std::pow(std::cos(th), alpha) * std::sin(th); }, 0.0, 0.5 * pi);
    const double c = 1.0 / (angular * J);
    const double closed = fractional_laplacian_constant(alpha, d);
    if (std::abs(c / closed - 1.0) > 1e-8)
        throw QuadratureFailure("plane-wave calibration disagrees with the closed form: " + std::to_string(c) +
                                " vs " + std::to_string(closed));
    return c;
}

}  // namespace fhk
