// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "fhk/analytic.hpp"
#include "fhk/kernel.hpp"
#include "fhk/mc.hpp"
#include "fhk/solve.hpp"
#include "reference.hpp"

using namespace fhk;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no runtime limit
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

KernelParams canonical(double alpha, int d = 1) {
    KernelParams p;
    p.alpha = alpha;
    p.dim = d;
    return p;
}

KernelQuery query(double alpha, int d, double t, double r, int k = 0) {
    KernelQuery q;
    q.params = canonical(alpha, d);
    q.t = t;
    q.r = r;
    q.k = k;
    return q;
}

// 1. Closed-form oracles.
Outcome oracle_agreement() {
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d)
        for (double t : {0.1, 0.25, 0.5, 1.0, 2.0})
            for (double r : {0.0, 0.5, 1.0, 2.0, 3.5, 5.0}) {
                worst = std::max(worst, std::abs(eval_kernel(query(1.0, d, t, r)) / ref::poisson(t, r, d) - 1.0));
                worst = std::max(worst, std::abs(eval_kernel(query(2.0, d, t, r)) / ref::gauss(t, r, d) - 1.0));
            }
    return {worst <= 1e-8, fmt("max relative error %.2e (tol 1e-8)", worst)};
}

// 2. Fourier / contour / subordination.
Outcome route_triangulation() {
    double fs = 0.0, fc = 0.0, cs = 0.0;
    for (double a : {0.5, 1.0, 1.5})
        for (int d = 1; d <= 3; ++d)
            for (double t : {0.1, 0.5, 1.0, 2.0})
                for (double r : {0.0, 1.0, 2.5, 5.0}) {
                    const KernelQuery q = query(a, d, t, r);
                    const double f = eval_kernel(q), s = eval_kernel_subordination(q);
                    const double scale = std::max(1.0, std::abs(f));
                    fs = std::max(fs, std::abs(f - s) / scale);
                    if (d == 1 && r > 0.0) {
                        const double c = eval_kernel_contour(q);
                        fc = std::max(fc, std::abs(f - c) / scale);
                        cs = std::max(cs, std::abs(c - s) / scale);
                    }
                }
    const double worst = std::max({fs, fc, cs});
    return {worst <= 1e-6,
            fmt("fourier-subordination %.1e, fourier-contour %.1e, contour-subordination %.1e (tol 1e-6)", fs, fc, cs)};
}

// 3. Two-sided envelope on R^d.
Outcome two_sided_bound() {
    Outcome o;
    const BoundReport p1 = bound_check(canonical(1.0), Geometry::Euclid, 0);
    const double e1 = std::max(std::abs(p1.ratio_min - 1.0 / ref::pi), std::abs(p1.ratio_max - 2.0 / ref::pi));
    o.pass = p1.pass && e1 <= 1e-6;
    o.detail = fmt("alpha=1 [%.9f, %.9f] err %.1e;", p1.ratio_min, p1.ratio_max, e1);
    for (double a : {0.5, 1.5}) {
        const BoundReport r = bound_check(canonical(a), Geometry::Euclid, 0);
        o.pass = o.pass && r.pass;
        o.detail += fmt(" alpha=%.1f [%.4f, %.4f] drift %.1e/%.1e;", a, r.ratio_min, r.ratio_max, r.drift_min,
                        r.drift_max);
    }
    // The Gaussian has no polynomial lower envelope: ratio_min collapses and keeps
    // collapsing when the distance range is extended.
    const BoundReport g = bound_check(canonical(2.0), Geometry::Euclid, 0);
    const bool control_fails = !g.pass && g.ratio_min < 1e-6 * g.ratio_max && g.refined_min <= g.ratio_min;
    o.pass = o.pass && control_fails;
    o.detail += fmt(" gaussian control ratio_min %.1e -> %.1e (%s)", g.ratio_min, g.refined_min,
                    control_fails ? "fails as required" : "DID NOT FAIL");
    return o;
}

// 4. Gevrey order in time at t = 0.
Outcome time_gevrey() {
    Outcome o;
    std::vector<int> k(20);
    for (int i = 0; i < 20; ++i) k[i] = i + 1;
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        const GevreyFit f = gevrey_fit(time_derivative_sequence(a, 1.0, 20), k);
        const bool ok = std::abs(f.sigma - a) <= 0.1;
        o.pass = o.pass && ok;
        o.detail += fmt("alpha=%.1f sigma %.3f; ", a, f.sigma);
    }
    o.detail += "(tol 0.1)";
    return o;
}

// 5. Radius of convergence at t = 0.
Outcome time_radius() {
    Outcome o;
    for (double x : {1.0, 2.0}) {
        auto d = time_derivative_sequence(1.0, x, 24);
        d.insert(d.begin(), 0.0);  // p(0, x) = 0 away from the origin
        const double r = radius_estimate(d);
        const bool ok = std::abs(r - x) <= 0.05 * x;
        o.pass = o.pass && ok;
        o.detail += fmt("alpha=1 x=%.0f radius %.4f; ", x, r);
    }
    auto d = time_derivative_sequence(0.5, 1.0, 24);
    d.insert(d.begin(), 0.0);
    const double r = radius_estimate(d);
    o.pass = o.pass && r >= 0.95;
    o.detail += fmt("alpha=0.5 x=1 radius %g; (tol 5%%)", r);
    return o;
}

// 6. Gevrey order in space at t = 1.
Outcome space_gevrey() {
    Outcome o;
    std::vector<int> m;
    for (int i = 2; i <= 40; i += 2) m.push_back(i);
    for (double a : {0.5, 1.0, 1.5}) {
        const GevreyFit f = gevrey_fit(space_derivative_sequence(a, 1.0, 40), m);
        const bool ok = std::abs(f.sigma - 1.0 / a) <= 0.15;
        o.pass = o.pass && ok;
        o.detail += fmt("alpha=%.1f sigma %.3f (1/alpha %.3f); ", a, f.sigma, 1.0 / a);
    }
    o.detail += "(tol 0.15)";
    return o;
}

// 7. |d_t^k p| t^{k-1} (t^{1/alpha} + r)^{1+alpha} <= C^{k+1} k^k, C fitted on k <= 5.
Outcome derivative_shape() {
    Outcome o;
    for (double a : {0.5, 1.0, 1.5}) {
        std::vector<double> worst(11, 0.0);
        for (double t : {0.25, 0.5, 1.0})
            for (int ir = 0; ir <= 16; ++ir) {
                const double r = 0.25 * ir;
                for (int k = 0; k <= 10; ++k) {
                    const double v = std::abs(eval_time_deriv(query(a, 1, t, r, k)));
                    const double s = v * std::pow(t, k - 1) * std::pow(std::pow(t, 1.0 / a) + r, 1.0 + a);
                    worst[k] = std::max(worst[k], s / std::pow(double(k), double(k)));
                }
            }
        double C = 0.0;
        for (int k = 0; k <= 5; ++k) C = std::max(C, std::pow(worst[k], 1.0 / (k + 1)));
        double margin = 0.0;  // max over k = 6..10 of observed / bound
        for (int k = 6; k <= 10; ++k) margin = std::max(margin, worst[k] / std::pow(C, k + 1));
        o.pass = o.pass && margin <= 1.0;
        o.detail += fmt("alpha=%.1f C %.3f worst ratio k=6..10 %.3f; ", a, C, margin);
    }
    o.detail += "(tol ratio <= 1)";
    return o;
}

// 8. Torus two-sided bounds.
Outcome torus_bounds() {
    Outcome o;
    for (double a : {0.5, 1.0, 1.5}) {
        o.detail += fmt("alpha=%.1f:", a);
        for (int k : {0, 1, 2, 5}) {
            const BoundReport r = bound_check(canonical(a), Geometry::Torus, k);
            o.pass = o.pass && r.pass;
            o.detail += fmt(" k%d %s(%.1e)", k, r.pass ? "ok" : "FAIL", std::max(r.drift_min, r.drift_max));
        }
        o.detail += "; ";
    }
    o.detail += "(drift tol 0.1)";
    return o;
}

// 9. Backward gate.
Outcome backward_gate() {
    Outcome o;
    auto bandlimited = [](const Grid& g, double a, double t) {
        return Field::sample(g, [=](const Point& x) {
            double s = 0.0;
            for (int n = 1; n <= 8; ++n) s += std::exp(-t * std::pow(n, a)) * std::cos(n * x[0] + 0.3 * n) / n;
            return s;
        });
    };
    auto rough = [](const Grid& g) {
        const int m = g.nodes_per_axis() / 2;
        return Field::sample(g, [m](const Point& x) {
            double s = 0.0;
            for (int n = 1; n <= m; ++n) s += std::cos(n * x[0]) / (double(n) * n);
            return s;
        });
    };
    for (double a : {0.5, 1.0, 1.5}) {
        const Grid g = Grid::torus(1, 32);
        const OperatorHandle G = OperatorHandle::spectral(a, g);
        const BackwardResult r = backward_solve(bandlimited(g, a, 0.2), bandlimited(g.refined(), a, 0.2), G, 0.2, 24);
        const double err = (r.field - bandlimited(g, a, 0.0)).sup_norm();
        o.pass = o.pass && err < 1e-4;
        o.detail += fmt("alpha=%.1f round-trip %.1e", a, err);
        // max_j rho_j sits at small j on coarse grids, where it grows only slowly
        // with N; the per-doubling factor approaches 2^alpha once the maximiser
        // moves up the j range. Judge it there, report the coarse figure too.
        double growth[2] = {0.0, 0.0};
        bool refused = true;
        int slot = 0;
        for (int n : {32, 8192}) {
            const Grid gr = Grid::torus(1, n);
            try {
                backward_solve(rough(gr), rough(gr.refined()), G.on_grid(gr), 0.2, 24);
                refused = false;
            } catch (const BackwardIllPosed& e) {
                const auto& tr = e.report().trace;
                growth[slot] = tr.back().second / tr.front().second;
            }
            ++slot;
        }
        const bool near = std::abs(growth[1] / std::pow(2.0, a) - 1.0) <= 0.15;
        o.pass = o.pass && refused && near;
        o.detail += fmt(", rough %s, A_est x%.3f per doubling at N=8192 (x%.3f at N=32; 2^alpha %.3f); ",
                        refused ? "refused" : "ACCEPTED", growth[1], growth[0], std::pow(2.0, a));
    }
    o.detail += "(tol 1e-4, growth within 15%)";
    return o;
}

// 10. Spectral versus singular-integral evolution.
Outcome uniqueness_surrogate() {
    Outcome o;
    const Grid g = Grid::torus(1, 64);
    const std::vector<std::function<double(double)>> fixtures{
        [](double x) { return std::exp(-4.0 * (1.0 - std::cos(x))); },
        [](double x) { return std::cos(x) + 0.3 * std::sin(3.0 * x); },
        [](double x) { return std::exp(std::sin(x)); },
        [](double x) { return std::tanh(3.0 * std::sin(x)); },
        [](double x) { return 1.0 / (1.2 + std::cos(x)); },
    };
    double worst = 0.0;
    for (double a : {0.5, 1.0, 1.5}) {
        const double kappa = calibrate_constant(a, 1);
        KernelParams p = canonical(a);
        p.kappa = Coefficient::sampled([kappa](const Point&, const Point&) { return kappa; }, {kappa, kappa, 0.0, 1.0});
        const OperatorHandle spec = OperatorHandle::spectral(a, g);
        const OperatorHandle sing = OperatorHandle::singular(canonical(a), g);
        for (const auto& f : fixtures) {
            const Field u0 = Field::sample(g, [&](const Point& x) { return f(x[0]); });
            const EvolveResult v = evolve_variable_kappa(u0, 0.5, p);
            const double diff = (v.field - evolve_mild(u0, 0.5, spec).field).sup_norm();
            const double model = mol_error_model(u0, 0.5, sing, v.dt);
            worst = std::max(worst, diff / model);
        }
    }
    o.pass = worst <= 3.0;
    o.detail = fmt("3 alphas x 5 fixtures, max disagreement / error model %.3f (tol 3)", worst);
    return o;
}

// 11. Nonlinear mild solutions.
Outcome nonlinear_mild() {
    const Grid g = Grid::torus(1, 32);
    const OperatorHandle G1 = OperatorHandle::spectral(1.0, g);
    const DuhamelResult q = duhamel_nonlinear(Field::constant(g, 0.1), 1.0, Rational{2, 1}, 400, G1);
    const double e2 = std::max(std::abs(q.field.max() - 1.0 / 9.0), std::abs(q.field.min() - 1.0 / 9.0));

    const double a = 1.5, t = 1.0;
    auto exact = [&](double s) {
        return Field::sample(g, [&](const Point& x) {
            return std::exp(s) * (1.0 + 0.5 * std::exp(-s) * std::cos(x[0]) +
                                  0.2 * std::exp(-s * std::pow(3.0, a)) * std::sin(3.0 * x[0]));
        });
    };
    const DuhamelResult l = duhamel_nonlinear(exact(0.0), t, Rational{1, 1}, 16000, OperatorHandle::spectral(a, g));
    const double e1 = (l.field - exact(t)).sup_norm();
    return {e2 <= 1e-6 && e1 <= 1e-8,
            fmt("p=2 |u - 1/9| %.1e (tol 1e-6), contraction %.2e; p=1 error %.1e (tol 1e-8)", e2, q.contraction, e1)};
}

// 12. Monte Carlo subordination.
Outcome monte_carlo() {
    Outcome o;
    for (double a : {0.5, 1.0, 1.5}) {
        SamplerConfig c;
        c.alpha = a;
        c.samples = 1000000;
        c.seed = 7;
        const auto x = sample_position(c);
        c.workers = 4;
        const auto x2 = sample_position(c);
        const bool same = x.size() == x2.size() && std::memcmp(x.data(), x2.data(), x.size() * sizeof(double)) == 0;
        const HistogramResult h = histogram_compare(x, [a](double v) {
            return eval_kernel(query(a, 1, 1.0, std::abs(v)));
        }, 50, -8.0, 8.0);
        const TailFit tf = tail_slope(radii(x, 1));
        const bool ok = same && h.p_value > 0.01 && std::abs(tf.slope + a) <= 0.1;
        o.pass = o.pass && ok;
        o.detail += fmt("alpha=%.1f p %.3f slope %.3f%s; ", a, h.p_value, tf.slope, same ? "" : " NOT REPRODUCIBLE");
    }
    o.detail += "(p > 0.01, slope tol 0.1, reruns bitwise equal)";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "oracle agreement", 60, oracle_agreement},
        {2, "route triangulation", 300, route_triangulation},
        {3, "two-sided bound", 0, two_sided_bound},
        {4, "time Gevrey order", 0, time_gevrey},
        {5, "analyticity at t=0", 0, time_radius},
        {6, "space Gevrey order", 0, space_gevrey},
        {7, "derivative-bound shape", 0, derivative_shape},
        {8, "torus bounds", 0, torus_bounds},
        {9, "backward gate", 0, backward_gate},
        {10, "uniqueness surrogate", 0, uniqueness_surrogate},
        {11, "nonlinear mild solutions", 0, nonlinear_mild},
        {12, "monte carlo subordination", 300, monte_carlo},
    };
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += fmt(" [over runtime budget %.0f s]", c.budget_s);
        }
        std::printf("%s  %2d  %-26s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
