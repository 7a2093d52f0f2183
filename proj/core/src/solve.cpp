#include "fhk/solve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fhk/kernel.hpp"
#include "fhk/spectral.hpp"

namespace fhk {

namespace {

constexpr double pi = std::numbers::pi;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolution time must be finite and nonnegative");
}

// Constant-kappa generator as a multiplier of |n|: G e_n = -scale |n|^alpha e_n.
double exact_rate(const OperatorHandle& G, double n2) { return G.scale() * std::pow(n2, 0.5 * G.alpha()); }

void require_constant_torus(const OperatorHandle& G) {
    if (!G.grid().periodic()) throw UnsupportedRoute("spectral evolution needs a periodic grid");
    if (G.route() == OperatorRoute::SingularIntegral && G.params().kappa && !G.params().kappa->is_constant())
        throw UnsupportedRoute("spectral evolution needs a constant kappa");
}

Field midpoint_step(const Field& u, const OperatorHandle& G, double dt) {
    const Field half = u + G.apply(u) * (0.5 * dt);
    return u + G.apply(half) * dt;
}

Field nonlinearity(const Field& u, Rational p) {
    if (p.is_integer()) return u.pow(double(p.num / p.den));
    if (!(u.min() > 0.0))
        throw DomainError("non-integer power " + p.str() + " needs a field bounded away from zero");
    return u.pow(p.value());
}

}  // namespace

double admissible_dt(const OperatorHandle& G) { return 2.0 / G.spectral_radius_bound(); }

EvolveResult evolve_mild(const Field& u0, double t, const OperatorHandle& G, const EvolveSpec& spec) {
    require_time(t);
    if (!(u0.grid() == G.grid())) throw DomainError("initial data and operator live on different grids");
    EvolveResult r{u0, 0, 0.0, 0.0, true, {u0.sup_norm()}};
    if (spec.method == EvolveMethod::SpectralExact) {
        require_constant_torus(G);
        if (t == 0.0) return r;
        r.field = spectral_multiply(u0, [&G, t](double n2) { return std::exp(-t * exact_rate(G, n2)); });
        r.sup_trace.push_back(r.field.sup_norm());
        return r;
    }

    const double lam = G.spectral_radius_bound();
    const double limit = 2.0 / lam;
    double dt = spec.dt > 0.0 ? spec.dt : spec.cfl_fraction / lam;
    if (dt > limit) throw CflViolation(dt, limit);
    if (t == 0.0) return r;
    const int steps = static_cast<int>(std::ceil(t / dt - 1e-12));
    dt = t / steps;
    r.steps = steps;
    r.dt = dt;
    r.c_cfl = dt / std::pow(G.grid().spacing(), G.alpha());
    Field u = u0;
    for (int s = 0; s < steps; ++s) {
        u = midpoint_step(u, G, dt);
        const double sup = u.sup_norm();
        if (sup > r.sup_trace.back() * (1.0 + 1e-12) + 1e-300) r.sup_monotone = false;
        r.sup_trace.push_back(sup);
    }
    r.field = std::move(u);
    return r;
}

EvolveResult evolve_variable_kappa(const Field& u0, double t, const KernelParams& p, double dt, SingularOptions opts) {
    const ValidationReport v = validate_params(p);
    if (!v.pass()) {
        std::string what = "kappa validation failed:";
        if (!v.symmetry.pass) what += " symmetry";
        if (!v.bounds.pass) what += " bounds";
        if (!v.holder.pass) what += " holder";
        throw DomainError(what);
    }
    const OperatorHandle G = OperatorHandle::singular(p, u0.grid(), opts);
    EvolveSpec spec;
    spec.method = EvolveMethod::MolExplicit;
    spec.dt = dt;
    return evolve_mild(u0, t, G, spec);
}

std::vector<double> discrete_symbol(const OperatorHandle& G) {
    const Grid& g = G.grid();
    if (g.dim() != 1 || !g.periodic()) throw UnsupportedRoute("discrete_symbol is defined on the 1-D torus");
    const int n = g.nodes_per_axis();
    std::vector<double> delta(n, 0.0);
    delta[0] = 1.0;
    const Spectrum col = Spectrum::forward(G.apply(Field(g, std::move(delta))));
    std::vector<double> mu(n / 2 + 1);
    for (int m = 0; m <= n / 2; ++m) mu[m] = col[m].real();
    return mu;
}

double mol_error_model(const Field& u0, double t, const OperatorHandle& G_mol, double dt) {
    if (t == 0.0) return 0.0;
    const auto mu = discrete_symbol(G_mol);
    const int steps = static_cast<int>(std::ceil(t / dt - 1e-12));
    const double h = t / steps;
    const Spectrum s = Spectrum::forward(u0);
    const int n = u0.grid().nodes_per_axis();
    double err = 0.0;
    for (int m = 0; m <= n / 2; ++m) {
        const double z = mu[m] * h;
        const double R = 1.0 + z + 0.5 * z * z;
        const double diff = std::abs(std::pow(R, steps) - std::exp(-t * exact_rate(G_mol, double(m) * m)));
        // Modes 0 < m < n/2 stand for the pair +-m.
        const double mult = (m == 0 || 2 * m == n) ? 1.0 : 2.0;
        err += mult * std::abs(s[m]) * diff;
    }
    return err / n + 1e-13 * steps * u0.sup_norm();
}

DuhamelResult duhamel_nonlinear(const Field& u0, double t, Rational p, int n_steps, const OperatorHandle& G,
                                double tol) {
    require_time(t);
    if (p.num <= 0 || p.den <= 0) throw DomainError("nonlinearity power must be a positive rational");
    if (n_steps < 1) throw DomainError("duhamel_nonlinear needs at least one step");
    if (G.route() != OperatorRoute::Spectral) throw UnsupportedRoute("duhamel_nonlinear runs on the spectral semigroup");
    if (!(u0.grid() == G.grid())) throw DomainError("initial data and operator live on different grids");

    DuhamelResult r{u0, n_steps, 0, 0.0, {u0.sup_norm()}};
    if (t == 0.0) return r;
    const double dt = t / n_steps;
    auto E = [&G, dt](const Field& f) {
        return spectral_multiply(f, [&G, dt](double n2) { return std::exp(-dt * exact_rate(G, n2)); });
    };
    const double blowup = 1e150;
    Field u = u0;
    for (int s = 0; s < n_steps; ++s) {
        const Field base = E(u + nonlinearity(u, p) * (0.5 * dt));
        Field v = base + nonlinearity(u, p) * (0.5 * dt);
        double prev = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            Field next = base + nonlinearity(v, p) * (0.5 * dt);
            const double diff = (next - v).sup_norm();
            ++r.picard_iterations;
            if (prev > 0.0 && diff > 0.0) r.contraction = std::max(r.contraction, diff / prev);
            v = std::move(next);
            if (!(v.sup_norm() < blowup)) {
                r.sup_trace.push_back(v.sup_norm());
                throw DuhamelDivergence("mild iteration blew up at step " + std::to_string(s), r.sup_trace);
            }
            if (diff <= tol * std::max(1.0, v.sup_norm())) {
                converged = true;
                break;
            }
            prev = diff;
        }
        if (!converged)
            throw DuhamelDivergence("Picard iteration did not contract at step " + std::to_string(s), r.sup_trace);
        u = std::move(v);
        r.sup_trace.push_back(u.sup_norm());
    }
    r.field = std::move(u);
    return r;
}

double torus_kernel_derivative(double alpha, int k, double t, double x, long modes) {
    double sum = k == 0 ? 0.5 : 0.0;
    for (long n = 1; n <= modes; ++n) {
        const double lam = std::pow(double(n), alpha);
        const double w = (k % 2 ? -1.0 : 1.0) * std::exp(k * std::log(lam) - t * lam);
        sum += w * std::cos(n * x);
    }
    return sum / pi;
}

long torus_mode_cutoff(double alpha, int k, double t) {
    // log of lambda^k exp(-t lambda), compared with its maximum over lambda >= 1.
    auto logterm = [k, t](double lam) { return k * std::log(lam) - t * lam; };
    const double peak_at = std::max(1.0, k / t);
    const double target = logterm(peak_at) - 40.0;
    double lam = peak_at;
    while (logterm(lam) > target) lam *= 1.1;
    return static_cast<long>(std::ceil(std::pow(lam, 1.0 / alpha)));
}

BoundReport bound_check(const KernelParams& p, Geometry geom, int k, const BoundGrid& grid) {
    p.check();
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    if (!(grid.t_min > 0.0 && grid.t_max <= 1.0 && grid.t_min <= grid.t_max))
        throw DomainError("bound_check needs 0 < t_min <= t_max <= 1");
    const double a = p.alpha;
    const int d = p.dim;
    const double kk = k == 0 ? 1.0 : std::pow(double(k), k);
    const double kfact = std::tgamma(k + 1.0);

    auto log_grid = [](double lo, double hi, int n) {
        std::vector<double> v;
        if (n == 1) return std::vector<double>{lo};
        for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
        return v;
    };

    BoundReport rep;
    rep.geometry = geom;
    rep.alpha = a;
    rep.k = k;

    auto extremes = [](const std::vector<double>& r) {
        return std::make_pair(*std::min_element(r.begin(), r.end()), *std::max_element(r.begin(), r.end()));
    };

    std::ostringstream desc;
    if (geom == Geometry::Euclid) {
        auto run = [&](int t_points, double y_max, int per_decade) {
            const auto ts = log_grid(grid.t_min, grid.t_max, t_points);
            std::vector<double> ys{0.0};
            const int ny = static_cast<int>(std::lround(std::log10(y_max / grid.y_min) * per_decade));
            for (int i = 0; i <= ny; ++i) ys.push_back(grid.y_min * std::pow(10.0, double(i) / per_decade));
            std::vector<double> ratios;
            KernelQuery q;
            q.params = p;
            q.k = k;
            for (double t : ts) {
                const double tscale = std::pow(t, 1.0 / a);
                for (double y : ys) {
                    q.t = t;
                    q.r = y * tscale;
                    const double v = k == 0 ? eval_kernel(q) : eval_time_deriv(q);
                    ratios.push_back(std::abs(v) * std::pow(t, k - 1) * std::pow(tscale + q.r, d + a) / kk);
                }
            }
            return extremes(ratios);
        };
        std::tie(rep.ratio_min, rep.ratio_max) = run(grid.t_points, grid.y_max, grid.per_decade);
        std::tie(rep.refined_min, rep.refined_max) = run(2 * grid.t_points - 1, 2 * grid.y_max, 2 * grid.per_decade);
        desc << "euclid d=" << d << " t in [" << grid.t_min << "," << grid.t_max << "] x" << grid.t_points
             << ", dist = y t^(1/alpha), y in {0} u [" << grid.y_min << "," << grid.y_max << "] at "
             << grid.per_decade << "/decade; refined: doubled y range and resolution";
    } else {
        if (d != 1) throw UnsupportedRoute("torus bounds are implemented for d = 1");
        const auto ts = log_grid(grid.t_min, grid.t_max, grid.t_points);
        long modes = grid.modes;
        if (modes <= 0) modes = torus_mode_cutoff(a, k, grid.t_min);
        auto run = [&](long m) {
            std::vector<double> ratios;
            for (double t : ts) {
                const double tscale = std::pow(t, 1.0 / a);
                for (int i = 0; i < grid.torus_points; ++i) {
                    const double dist = pi * i / (grid.torus_points - 1);
                    const double ball = std::min(2.0 * (dist + tscale), 2.0 * pi);
                    const double v = torus_kernel_derivative(a, k, t, dist, m);
                    ratios.push_back(std::abs(v) * std::pow(t, k - 1) * (std::pow(dist, a) + t) * ball / kfact);
                }
            }
            return extremes(ratios);
        };
        std::tie(rep.ratio_min, rep.ratio_max) = run(modes);
        std::tie(rep.refined_min, rep.refined_max) = run(2 * modes);
        desc << "torus t in [" << grid.t_min << "," << grid.t_max << "] x" << grid.t_points << ", dist in [0,pi] x"
             << grid.torus_points << ", modes " << modes << " (refined " << 2 * modes << ")";
    }
    rep.grid = desc.str();

    auto drift = [](double a0, double a1) {
        if (a0 == 0.0 && a1 == 0.0) return 0.0;
        return std::abs(a1 - a0) / std::max(std::abs(a0), std::abs(a1));
    };
    rep.drift_min = drift(rep.ratio_min, rep.refined_min);
    rep.drift_max = drift(rep.ratio_max, rep.refined_max);
    const bool finite = std::isfinite(rep.ratio_max) && std::isfinite(rep.refined_max);
    const bool positive = rep.ratio_min > 0.0 && rep.refined_min > 0.0;
    if (k == 0) {
        rep.C_lower = rep.ratio_min;
        rep.C_upper = rep.ratio_max;
        rep.pass = positive && finite && rep.drift_min < rep.drift_limit && rep.drift_max < rep.drift_limit;
    } else {
        rep.C_upper = std::pow(rep.ratio_max, 1.0 / (k + 1));
        rep.C_lower = 0.0;
        rep.pass = positive && finite && rep.drift_max < rep.drift_limit;
    }
    return rep;
}

}  // namespace fhk
