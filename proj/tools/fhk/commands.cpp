#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "cli.hpp"
#include "fhk/analytic.hpp"
#include "fhk/kernel.hpp"
#include "fhk/mc.hpp"
#include "fhk/oracles.hpp"
#include "fhk/solve.hpp"
#include "json.hpp"

namespace fhk::cli {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

struct Output {
    std::string header;
    std::vector<std::string> rows;
    json report = json::object();
    int code = Success;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class... T>
std::string row(const T&... cells) {
    std::ostringstream out;
    bool first = true;
    auto put = [&](const auto& c) {
        if (!first) out << ',';
        first = false;
        if constexpr (std::is_arithmetic_v<std::decay_t<decltype(c)>>) out << num(double(c));
        else out << c;
    };
    (put(cells), ...);
    return out.str();
}

KernelParams kernel_params(Config& c) {
    KernelParams p;
    p.alpha = c.real("kernel.alpha", 1.0);
    p.dim = static_cast<int>(c.integer("kernel.dim", 1));
    if (c.tree().get_optional<std::string>("kernel.kappa")) p.kappa = Coefficient::constant(c.real("kernel.kappa", 1.0));
    p.check();
    return p;
}

double tolerance(Config& c, const Options& o, const std::string& key, double fallback) {
    if (o.tolerance) {
        c.set(key, num(*o.tolerance));
        return *o.tolerance;
    }
    return c.real(key, fallback);
}

Grid torus(Config& c, long fallback) {
    const long n = c.integer("grid.nodes", fallback);
    return Grid::torus(1, static_cast<int>(n));
}

json gate_json(const GateReport& g) {
    return {{"pass", g.pass},
            {"bounded", g.bounded},
            {"A_est", g.A_est},
            {"refinement_growth", g.refinement_growth},
            {"growth_limit", g.growth_limit},
            {"ratios", g.ratios},
            {"refined_ratios", g.refined_ratios},
            {"trace", g.trace}};
}

// ---------------------------------------------------------------------------

Output cmd_kernel(Config& c, const Options& o) {
    const KernelParams p = kernel_params(c);
    const auto ts = c.reals("grid.t", "0.5,1");
    const auto rs = c.reals("grid.r", "0,1");
    const double tol = tolerance(c, o, "run.tolerance", 1e-6);
    Output out;
    out.header = "t,r,p,route,abs_route_disagreement";
    double worst = 0.0;
    bool ok = true;
    for (double t : ts) {
        for (double r : rs) {
            KernelQuery q;
            q.params = p;
            q.t = t;
            q.r = r;
            const double v = eval_kernel(q);
            double dis = 0.0;
            if (p.dim == 1 && r > 0.0) dis = std::max(dis, std::abs(v - eval_kernel_contour(q)));
            if (p.alpha < 2.0) dis = std::max(dis, std::abs(v - eval_kernel_subordination(q)));
            if (!p.kappa && (p.alpha == 1.0 || p.alpha == 2.0))
                dis = std::max(dis, std::abs(v - oracle_value(p.alpha == 1.0 ? OracleKind::Poisson : OracleKind::Gaussian,
                                                              t, r, p.dim)));
            if (dis > tol * std::max(1.0, std::abs(v))) ok = false;
            worst = std::max(worst, dis);
            out.rows.push_back(row(t, r, v, "fourier", dis));
        }
    }
    out.report = {{"command", "kernel"}, {"points", out.rows.size()}, {"max_route_disagreement", worst},
                  {"tolerance", tol}, {"pass", ok}};
    out.code = ok ? Success : ToleranceFailure;
    return out;
}

Output cmd_gevrey(Config& c, const Options& o) {
    const KernelParams p = kernel_params(c);
    if (p.dim != 1) throw ConfigError("gevrey runs in d = 1");
    const std::string route = c.text("run.route", "time");
    const long k_max = c.integer("run.k_max", 20);
    if (k_max < 8) throw InsufficientData("k_max must be at least 8");
    std::vector<double> d;
    std::vector<int> ks;
    double expected, tol;
    if (route == "time") {
        const double x = c.real("run.x", 1.0);
        d = time_derivative_sequence(p.alpha, x, static_cast<int>(k_max));
        for (int k = 1; k <= k_max; ++k) ks.push_back(k);
        expected = p.alpha;
        tol = tolerance(c, o, "run.tolerance", 0.1);
    } else if (route == "space") {
        if (p.alpha == 2.0) throw ConfigError("space route needs alpha < 2");
        const double t = c.real("run.t", 1.0);
        d = space_derivative_sequence(p.alpha, t, static_cast<int>(k_max));
        for (int k = 2; k <= k_max; k += 2) ks.push_back(k);
        expected = 1.0 / p.alpha;
        tol = tolerance(c, o, "run.tolerance", 0.15);
    } else {
        throw ConfigError("run.route must be time or space");
    }
    const GevreyFit f = gevrey_fit(d, ks);
    Output out;
    out.header = "k,abs_derivative";
    for (std::size_t i = 0; i < ks.size(); ++i) out.rows.push_back(row(ks[i], d[i]));
    const bool pass = std::abs(f.sigma - expected) <= tol;
    out.report = {{"command", "gevrey"}, {"route", route},     {"sigma_hat", f.sigma}, {"expected", expected},
                  {"residual", f.residual}, {"k_used", f.used}, {"tolerance", tol},     {"pass", pass}};
    out.code = pass ? Success : ToleranceFailure;
    return out;
}

Output cmd_backward(Config& c, const Options& o) {
    const KernelParams p = kernel_params(c);
    if (p.dim != 1) throw ConfigError("backward runs on the 1-D torus");
    const Grid g = torus(c, 32);
    const std::string fixture = c.text("run.fixture", "bandlimited");
    const double delta = c.real("run.delta", 0.2);
    const long J = c.integer("run.J", 24);
    const double tol = tolerance(c, o, "run.tolerance", 1e-4);
    const OperatorHandle G = OperatorHandle::spectral(p, g);

    std::function<Field(const Grid&)> terminal;
    std::optional<Field> reference;
    if (fixture == "bandlimited") {
        auto a0 = [](const Grid& gr) {
            return Field::sample(gr, [](const Point& x) {
                double s = 0.0;
                for (int n = 1; n <= 8; ++n) s += std::cos(n * x[0] + 0.3 * n) / n;
                return s;
            });
        };
        terminal = [&](const Grid& gr) { return evolve_mild(a0(gr), delta, G.on_grid(gr)).field; };
        reference = a0(g);
    } else if (fixture == "rough") {
        terminal = [](const Grid& gr) {
            const int modes = gr.nodes_per_axis() / 2;
            return Field::sample(gr, [modes](const Point& x) {
                double s = 0.0;
                for (int n = 1; n <= modes; ++n) s += std::cos(n * x[0]) / (double(n) * n);
                return s;
            });
        };
    } else if (fixture == "eigen") {
        terminal = [](const Grid& gr) { return Field::sample(gr, [](const Point& x) { return std::sin(x[0]); }); };
        reference = Field::sample(g, [&](const Point& x) { return std::exp(delta * G.scale()) * std::sin(x[0]); });
    } else {
        throw ConfigError("run.fixture must be bandlimited, rough or eigen");
    }

    Output out;
    out.header = "x,u";
    try {
        const BackwardResult r = backward_solve(terminal(g), terminal(g.refined()), G, delta, static_cast<int>(J));
        for (int i = 0; i < g.nodes_per_axis(); ++i) out.rows.push_back(row(g.coordinate(i), r.field[i]));
        out.report = {{"command", "backward"},
                      {"fixture", fixture},
                      {"gate", gate_json(r.certificate.gate)},
                      {"certificate",
                       {{"A_est", r.certificate.A_est}, {"truncation_bound", r.certificate.truncation_bound}}}};
        bool pass = true;
        if (reference) {
            const double err = (r.field - *reference).sup_norm();
            pass = err < tol;
            out.report["reconstruction_error"] = err;
        } else {
            out.report["reconstruction_error"] = nullptr;
        }
        out.report["tolerance"] = tol;
        out.report["pass"] = pass;
        out.code = pass ? Success : ToleranceFailure;
    } catch (const BackwardIllPosed& e) {
        out.report = {{"command", "backward"}, {"fixture", fixture}, {"error", "backward-ill-posed"},
                      {"gate", gate_json(e.report())}, {"tolerance", tol},    {"pass", false}};
        out.code = IllPosed;
    }
    return out;
}

Output cmd_bounds(Config& c, const Options&) {
    const KernelParams p = kernel_params(c);
    const std::string geom = c.text("run.geometry", "euclid");
    if (geom != "euclid" && geom != "torus") throw ConfigError("run.geometry must be euclid or torus");
    const long k = c.integer("run.k", 0);
    BoundGrid bg;
    bg.t_min = c.real("run.t_min", bg.t_min);
    bg.t_max = c.real("run.t_max", bg.t_max);
    bg.t_points = static_cast<int>(c.integer("run.t_points", bg.t_points));
    bg.y_min = c.real("run.y_min", bg.y_min);
    bg.y_max = c.real("run.y_max", bg.y_max);
    bg.per_decade = static_cast<int>(c.integer("run.per_decade", bg.per_decade));
    bg.torus_points = static_cast<int>(c.integer("run.torus_points", bg.torus_points));
    bg.modes = c.integer("run.modes", 0);
    const BoundReport r = bound_check(p, geom == "torus" ? Geometry::Torus : Geometry::Euclid, static_cast<int>(k), bg);
    Output out;
    out.header = "geometry,alpha,k,ratio_min,ratio_max,refined_min,refined_max,drift_min,drift_max,pass";
    out.rows.push_back(row(geom, r.alpha, r.k, r.ratio_min, r.ratio_max, r.refined_min, r.refined_max, r.drift_min,
                           r.drift_max, r.pass ? "true" : "false"));
    out.report = {{"command", "bounds"},     {"geometry", geom},          {"alpha", r.alpha},
                  {"k", r.k},                {"ratio_min", r.ratio_min},  {"ratio_max", r.ratio_max},
                  {"refined_min", r.refined_min}, {"refined_max", r.refined_max}, {"drift_min", r.drift_min},
                  {"drift_max", r.drift_max}, {"C_lower", r.C_lower},   {"C_upper", r.C_upper},
                  {"grid", r.grid},          {"tolerance", r.drift_limit}, {"pass", r.pass}};
    out.code = r.pass ? Success : ToleranceFailure;
    return out;
}

Output cmd_evolve(Config& c, const Options& o) {
    const KernelParams p = kernel_params(c);
    if (p.dim != 1) throw ConfigError("evolve runs on the 1-D torus");
    const Grid g = torus(c, 64);
    const std::string fixture = c.text("run.fixture", "eigen");
    const std::string method = c.text("run.method", "spectral");
    const double t = c.real("run.t", 1.0);

    Field u0 = Field::zeros(g);
    if (fixture == "eigen") u0 = Field::sample(g, [](const Point& x) { return std::cos(x[0]); });
    else if (fixture == "bump") u0 = Field::sample(g, [](const Point& x) { return std::exp(-8.0 * (1.0 - std::cos(x[0]))); });
    else throw ConfigError("run.fixture must be eigen or bump");

    const OperatorHandle spec_op = OperatorHandle::spectral(p, g);
    EvolveResult r{u0, 0, 0.0, 0.0, true, {}};
    double model = 0.0;
    if (method == "spectral") {
        r = evolve_mild(u0, t, spec_op);
    } else if (method == "mol") {
        if (p.alpha == 2.0) throw ConfigError("mol needs alpha < 2");
        const OperatorHandle sing = OperatorHandle::singular(p, g);
        EvolveSpec es;
        es.method = EvolveMethod::MolExplicit;
        es.dt = c.real("run.dt", 0.0);
        r = evolve_mild(u0, t, sing, es);
        model = mol_error_model(u0, t, sing, r.dt);
    } else {
        throw ConfigError("run.method must be spectral or mol");
    }

    std::optional<Field> ref;
    if (fixture == "eigen") {
        ref = Field::sample(g, [&](const Point& x) { return std::exp(-t * spec_op.scale()) * std::cos(x[0]); });
    } else if (p.alpha == 1.0 && !p.kappa && t > 0.0) {
        // Periodic Poisson kernel sinh t / (2 pi (cosh t - cos x)), trapezoid convolution.
        const int n = g.nodes_per_axis();
        std::vector<double> v(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                v[i] += std::sinh(t) / (2.0 * pi * (std::cosh(t) - std::cos(g.coordinate(i) - g.coordinate(j)))) * u0[j] *
                        g.spacing();
        ref = Field(g, std::move(v));
    } else if (method != "spectral") {
        ref = evolve_mild(u0, t, spec_op).field;
    }

    const double base_tol = method == "spectral" ? (fixture == "eigen" ? 1e-10 : 1e-6) : 3.0 * model;
    const double tol = tolerance(c, o, "run.tolerance", base_tol);
    Output out;
    out.header = "x,u";
    for (int i = 0; i < g.nodes_per_axis(); ++i) out.rows.push_back(row(g.coordinate(i), r.field[i]));
    out.report = {{"command", "evolve"}, {"fixture", fixture}, {"method", method}, {"t", t},
                  {"steps", r.steps},    {"dt", r.dt},         {"c_cfl", r.c_cfl}, {"sup_monotone", r.sup_monotone}};
    bool pass = true;
    if (ref) {
        const double err = (r.field - *ref).sup_norm();
        out.report["max_error"] = err;
        pass = err <= tol;
    } else {
        out.report["max_error"] = nullptr;
    }
    if (method == "mol") out.report["error_model"] = model;
    out.report["tolerance"] = tol;
    out.report["pass"] = pass;
    out.code = pass ? Success : ToleranceFailure;
    return out;
}

Output cmd_mc(Config& c, const Options& o) {
    const KernelParams p = kernel_params(c);
    if (p.dim != 1) throw ConfigError("mc histogram runs in d = 1");
    SamplerConfig sc;
    sc.alpha = p.alpha;
    const double t = c.real("run.t", 1.0);
    sc.t = t * p.time_scale();
    sc.samples = static_cast<std::size_t>(c.integer("run.samples", 1000000));
    sc.seed = o.seed;
    sc.workers = o.workers;
    const int bins = static_cast<int>(c.integer("run.bins", 50));
    const double lo = c.real("run.lo", -8.0), hi = c.real("run.hi", 8.0);
    const double p_min = tolerance(c, o, "run.tolerance", 0.01);
    if (sc.samples == 0) throw InsufficientData("run.samples must be positive");

    const auto x = sample_position(sc);
    KernelQuery q;
    q.params = p;
    q.t = t;
    const HistogramResult h = histogram_compare(x, [&q](double v) {
        KernelQuery qq = q;
        qq.r = std::abs(v);
        return eval_kernel(qq);
    }, bins, lo, hi);

    Output out;
    out.header = "cell_lo,cell_hi,observed,expected";
    for (std::size_t i = 0; i < h.observed.size(); ++i)
        out.rows.push_back(row(h.edges[i], h.edges[i + 1], h.observed[i], h.expected[i]));
    bool pass = h.p_value > p_min;
    out.report = {{"command", "mc"},        {"t", t}, {"samples", sc.samples},       {"seed", sc.seed},
                  {"chi_square", h.chi_square}, {"dof", h.dof},           {"p_value", h.p_value},
                  {"max_deviation", h.max_deviation}, {"merged_bins", h.merged}, {"tolerance", p_min}};
    if (p.alpha < 2.0) {
        const TailFit tf = tail_slope(radii(x, 1));
        const double slope_tol = 0.1;
        const bool tail_ok = std::abs(tf.slope + p.alpha) <= slope_tol;
        out.report["tail"] = {{"slope", tf.slope},      {"expected", -p.alpha}, {"r_lo", tf.r_lo},
                              {"r_hi", tf.r_hi},        {"tolerance", slope_tol}, {"pass", tail_ok}};
        pass = pass && tail_ok;
    }
    out.report["pass"] = pass;
    out.code = pass ? Success : ToleranceFailure;
    return out;
}

const std::map<std::string, Output (*)(Config&, const Options&)> commands{
    {"kernel", cmd_kernel}, {"gevrey", cmd_gevrey}, {"backward", cmd_backward},
    {"bounds", cmd_bounds}, {"evolve", cmd_evolve}, {"mc", cmd_mc},
};

void write_outputs(const Output& out, Config& c, const Options& o) {
    std::filesystem::create_directories(o.out);
    {
        std::ofstream csv(o.out / "results.csv");
        csv << out.header << '\n';
        for (const auto& r : out.rows) csv << r << '\n';
    }
    {
        std::ofstream js(o.out / "report.json");
        js << out.report.dump(2) << '\n';
    }
    c.set("cli.command", o.command);
    c.set("cli.seed", std::to_string(o.seed));
    c.set("cli.workers", std::to_string(o.workers));
    if (o.tolerance) c.set("cli.tolerance", num(*o.tolerance));
    boost::property_tree::write_ini((o.out / "manifest.ini").string(), c.tree());
}

}  // namespace

int run(Config& config, const Options& opts) {
    auto it = commands.find(opts.command);
    if (it == commands.end()) {
        std::fprintf(stderr, "unknown command '%s'\n", opts.command.c_str());
        return ConfigFailure;
    }
    Output out;
    try {
        out = it->second(config, opts);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return ConfigFailure;
    } catch (const InsufficientData& e) {
        std::fprintf(stderr, "insufficient-data: %s\n", e.what());
        return ConfigFailure;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return ToleranceFailure;
    }
    write_outputs(out, config, opts);
    return out.code;
}

}  // namespace fhk::cli
