#include "fhk/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "fhk/errors.hpp"

namespace fhk {

Coefficient Coefficient::constant(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("coefficient constant must be positive");
    Coefficient c;
    c.value_ = value;
    c.bounds_ = {value, value, 0.0, 1.0};
    return c;
}

Coefficient Coefficient::sampled(CoefficientFn fn, CoefficientBounds declared) {
    if (!fn) throw DomainError("sampled coefficient needs a callable");
    if (!(declared.lower > 0.0) || declared.upper < declared.lower)
        throw DomainError("coefficient bounds need 0 < lower <= upper");
    if (declared.holder_constant < 0.0 || !(declared.holder_exponent > 0.0) ||
        declared.holder_exponent > 1.0)
        throw DomainError("Hoelder exponent must lie in (0, 1] with a nonnegative constant");
    Coefficient c;
    c.fn_ = std::move(fn);
    c.bounds_ = declared;
    return c;
}

Coefficient Coefficient::scaled(double s) const {
    if (!(s > 0.0)) throw DomainError("coefficient scale must be positive");
    if (is_constant()) return constant(value_ * s);
    CoefficientBounds b = bounds_;
    b.lower *= s;
    b.upper *= s;
    b.holder_constant *= s;
    auto f = fn_;
    return sampled([f, s](const Point& x, const Point& z) { return s * f(x, z); }, b);
}

void KernelParams::check() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
}

void KernelParams::check_nonlocal() const {
    check();
    if (alpha >= 2.0) throw DomainError("the singular integral diverges at alpha = 2");
}

double fractional_laplacian_constant(double alpha, int d) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("the constant c_{d,alpha} needs 0 < alpha < 2");
    if (d < 1 || d > 3) throw DomainError("dimension must be 1, 2 or 3");
    return std::pow(2.0, alpha) * std::tgamma(0.5 * (d + alpha)) /
           (std::pow(std::numbers::pi, 0.5 * d) * std::abs(std::tgamma(-0.5 * alpha)));
}

Coefficient KernelParams::resolved_kappa() const {
    if (kappa) return *kappa;
    return Coefficient::constant(fractional_laplacian_constant(alpha, dim));
}

double KernelParams::time_scale() const {
    check();
    if (!kappa) return 1.0;
    if (!kappa->is_constant()) throw UnsupportedRoute("this route needs a constant coefficient");
    if (alpha == 2.0) return kappa->constant_value();
    return kappa->constant_value() / fractional_laplacian_constant(alpha, dim);
}

GrowthWeight::GrowthWeight(double alpha, double epsilon) : alpha_(alpha), epsilon_(epsilon) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("weight alpha must lie in (0, 2]");
    if (!(epsilon > 0.0 && epsilon < alpha)) throw DomainError("weight epsilon must lie in (0, alpha)");
}

double GrowthWeight::operator()(const Point& x, int dim) const {
    return 1.0 + std::pow(norm(x, dim), alpha_ - epsilon_);
}

FieldNorms field_norms(const Field& f, const GrowthWeight& w) {
    FieldNorms n;
    const auto& g = f.grid();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        n.sup = std::max(n.sup, a);
        n.weighted = std::max(n.weighted, a / w(g.point(i), g.dim()));
    }
    return n;
}

namespace {

std::string describe(const Point& p, int dim) {
    std::string s = "(";
    char buf[32];
    for (int a = 0; a < dim; ++a) {
        std::snprintf(buf, sizeof buf, "%s%.6g", a ? ", " : "", p[a]);
        s += buf;
    }
    return s + ")";
}

// Tensor lattice -extent + i*2*extent/n per axis, flattened with the last axis fastest.
std::vector<Point> lattice(int dim, int n, double extent, bool drop_origin) {
    std::vector<Point> pts;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    for (std::size_t f = 0; f < total; ++f) {
        Point p{0.0, 0.0, 0.0};
        std::size_t r = f;
        bool origin = true;
        for (int a = dim - 1; a >= 0; --a) {
            const int i = static_cast<int>(r % n);
            r /= n;
            p[a] = -extent + i * (2.0 * extent / n);
            origin = origin && i == n / 2;
        }
        if (!(drop_origin && origin)) pts.push_back(p);
    }
    return pts;
}

}  // namespace

ValidationReport validate_params(const KernelParams& p, const SamplingLattice& lat) {
    p.check();
    if (lat.x_points < 2 || lat.z_points < 2 || lat.x_points % 2 || lat.z_points % 2)
        throw DomainError("sampling lattice needs an even number (>= 2) of points per axis");

    ValidationReport rep;
    const Coefficient kappa = p.alpha < 2.0 || p.kappa ? p.resolved_kappa() : Coefficient::constant(1.0);
    rep.declared = kappa.bounds();
    const auto& b = rep.declared;
    const int d = p.dim;
    const auto xs = lattice(d, lat.x_points, lat.x_extent, false);
    const auto zs = lattice(d, lat.z_points, lat.z_extent, true);

    std::vector<double> table(xs.size() * zs.size());
    rep.observed_min = INFINITY;
    rep.observed_max = -INFINITY;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < zs.size(); ++j) {
            const Point& x = xs[i];
            const Point& z = zs[j];
            const double k = kappa(x, z);
            table[i * zs.size() + j] = k;
            rep.observed_min = std::min(rep.observed_min, k);
            rep.observed_max = std::max(rep.observed_max, k);
            if (rep.bounds.pass && !(k >= b.lower && k <= b.upper)) {
                rep.bounds.pass = false;
                rep.bounds.first_violation = "kappa" + describe(x, d) + describe(z, d) + " = " +
                                             std::to_string(k) + " outside [" +
                                             std::to_string(b.lower) + ", " +
                                             std::to_string(b.upper) + "]";
            }
            Point mz{-z[0], -z[1], -z[2]};
            const double km = kappa(x, mz);
            if (rep.symmetry.pass && km != k) {
                rep.symmetry.pass = false;
                rep.symmetry.first_violation = "kappa" + describe(x, d) + describe(z, d) + " = " +
                                               std::to_string(k) + " but kappa at -z = " +
                                               std::to_string(km);
            }
        }
    }

    // Hoelder pairs: every pair of x nodes on a common coordinate line. A
    // refined lattice contains all coarse lines, so the pair set only grows.
    const int n = lat.x_points;
    const double slack = 1e-12 * std::max(1.0, b.upper);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int a = 0; a < d; ++a) {
            std::size_t stride = 1;
            for (int c = d - 1; c > a; --c) stride *= static_cast<std::size_t>(n);
            const int ia = static_cast<int>((i / stride) % n);
            for (int ib = ia + 1; ib < n; ++ib) {
                const std::size_t i2 = i + static_cast<std::size_t>(ib - ia) * stride;
                const double dx = std::abs(xs[i2][a] - xs[i][a]);
                const double denom = std::pow(dx, b.holder_exponent);
                for (std::size_t j = 0; j < zs.size(); ++j) {
                    const double diff =
                        std::abs(table[i * zs.size() + j] - table[i2 * zs.size() + j]);
                    rep.observed_holder = std::max(rep.observed_holder, diff / denom);
                    if (rep.holder.pass && diff > b.holder_constant * denom + slack) {
                        rep.holder.pass = false;
                        rep.holder.first_violation =
                            "|kappa" + describe(xs[i], d) + " - kappa" + describe(xs[i2], d) +
                            "| at z=" + describe(zs[j], d) + " is " + std::to_string(diff) +
                            " > " + std::to_string(b.holder_constant) + "*|x-y|^" +
                            std::to_string(b.holder_exponent);
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace fhk
