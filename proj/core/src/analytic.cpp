#include "fhk/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "fhk/kernel.hpp"
#include "fhk/oracles.hpp"
#include "fhk/spectral.hpp"

namespace fhk {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double log_factorial(int k) { return std::lgamma(k + 1.0); }

// log of the model term A^{j+1} j^j |s|^j / j!
double log_model_term(double A, int j, double s) {
    const double jj = j == 0 ? 0.0 : j * std::log(double(j));
    return (j + 1) * std::log(A) + jj + j * std::log(std::abs(s)) - log_factorial(j);
}

std::size_t nearest_node(const Grid& g, const Point& x) {
    std::array<int, 3> idx{0, 0, 0};
    const int n = g.nodes_per_axis();
    for (int a = 0; a < g.dim(); ++a) {
        long i = std::lround((x[a] + g.extent()) / g.spacing());
        if (g.periodic()) i = ((i % n) + n) % n;
        else i = std::clamp<long>(i, 0, n - 1);
        idx[a] = static_cast<int>(i);
    }
    return g.flat(idx);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
    return A.colPivHouseholderQr().solve(y);
}

// Indices that survive iterative removal of the most negative residual while
// it lies more than three decades below the fit: values that are zero in exact
// arithmetic come back as rounding noise and would otherwise drag the fit.
std::vector<int> trim_numerical_zeros(const Eigen::MatrixXd& A, const std::vector<double>& y, std::size_t min_points) {
    std::vector<int> keep(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) keep[i] = static_cast<int>(i);
    const double floor = -3.0 * std::log(10.0);
    while (keep.size() > min_points) {
        Eigen::MatrixXd As(keep.size(), A.cols());
        Eigen::VectorXd ys(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            As.row(i) = A.row(keep[i]);
            ys(i) = y[keep[i]];
        }
        const Eigen::VectorXd res = ys - As * least_squares(As, ys);
        Eigen::Index worst;
        if (res.minCoeff(&worst) > floor) break;
        keep.erase(keep.begin() + worst);
    }
    return keep;
}

}  // namespace

std::vector<double> TaylorSeries::recompute_norms() const {
    std::vector<double> out;
    out.reserve(coeffs.size());
    for (const Field& a : coeffs) out.push_back(field_norms(a, weight).weighted);
    return out;
}

TaylorSeries taylor_coeffs(const Field& a0, const OperatorHandle& G, int J, SeriesSign sign,
                           std::optional<GrowthWeight> weight, double center) {
    if (J < 1) throw DomainError("taylor_coeffs needs J >= 1");
    TaylorSeries s;
    s.center = center;
    s.sign = sign;
    s.weight = weight.value_or(GrowthWeight::midpoint(G.alpha()));
    s.coeffs.reserve(J + 1);
    s.coeffs.push_back(a0);
    if (G.route() == OperatorRoute::Spectral) {
        // Exact multiplier powers on the spectrum of a0. Coefficients at the
        // rounding level of the transform are cleared first: multiplied by
        // |n|^{alpha j} they would otherwise swamp every band-limited input.
        Spectrum spec = Spectrum::forward(a0);
        double peak = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) peak = std::max(peak, std::abs(spec[i]));
        for (std::size_t i = 0; i < spec.size(); ++i)
            if (std::abs(spec[i]) <= spectral_noise_floor * peak) spec[i] = 0.0;
        const double a = G.alpha(), sc = sign == SeriesSign::Forward ? -G.scale() : G.scale();
        for (int j = 1; j <= J; ++j) {
            spec.multiply([a, sc](double n2) { return sc * std::pow(n2, 0.5 * a); });
            s.coeffs.push_back(spec.inverse());
        }
        s.sup_norms = s.recompute_norms();
        return s;
    }
    for (int j = 1; j <= J; ++j) {
        try {
            Field next = G.apply(s.coeffs.back());
            s.coeffs.push_back(sign == SeriesSign::Forward ? std::move(next) : -next);
        } catch (const Error& e) {
            throw SeriesStepFailure(j, e.what());
        }
    }
    s.sup_norms = s.recompute_norms();
    return s;
}

std::vector<double> growth_ratios(const TaylorSeries& s) {
    std::vector<double> rho(s.sup_norms.size());
    for (std::size_t j = 0; j < rho.size(); ++j) {
        const double a = s.sup_norms[j];
        if (a == 0.0) continue;
        const double jj = j == 0 ? 0.0 : j * std::log(double(j));
        rho[j] = std::exp((std::log(a) - jj) / double(j + 1));
    }
    return rho;
}

GateReport growth_gate(const TaylorSeries& coarse, const TaylorSeries& refined, double growth_limit) {
    if (coarse.order() < 8 || refined.order() < coarse.order())
        throw InsufficientData("growth gate needs J >= 8 on both runs");
    GateReport r;
    r.growth_limit = growth_limit;
    r.ratios = growth_ratios(coarse);
    r.refined_ratios = growth_ratios(refined);
    r.refined_ratios.resize(r.ratios.size());
    r.A_est = *std::max_element(r.ratios.begin(), r.ratios.end());
    const double A_fine = *std::max_element(r.refined_ratios.begin(), r.refined_ratios.end());
    r.trace = {{coarse.coeffs.front().grid().nodes_per_axis(), r.A_est},
               {refined.coeffs.front().grid().nodes_per_axis(), A_fine}};

    // Bounded: the last third of the range does not climb above the rest.
    const std::size_t cut = (2 * r.ratios.size()) / 3;
    const double head = *std::max_element(r.ratios.begin(), r.ratios.begin() + cut);
    const double tail = *std::max_element(r.ratios.begin() + cut, r.ratios.end());
    r.bounded = std::isfinite(r.A_est) && tail <= growth_limit * head;

    r.refinement_growth = 0.0;
    for (std::size_t j = 1; j < r.ratios.size(); ++j) {
        if (r.ratios[j] == 0.0 && r.refined_ratios[j] == 0.0) continue;
        const double g = r.ratios[j] == 0.0 ? inf : r.refined_ratios[j] / r.ratios[j];
        r.refinement_growth = std::max(r.refinement_growth, g);
    }
    r.pass = r.bounded && r.refinement_growth < growth_limit;
    return r;
}

SeriesValue evaluate_series(const TaylorSeries& s, double dt, const Point& x) {
    SeriesValue v;
    const std::size_t node = nearest_node(s.coeffs.front().grid(), x);
    double term_scale = 1.0;
    for (int j = 0; j <= s.order(); ++j) {
        if (j > 0) term_scale *= dt / j;
        v.value += s.coeffs[j][node] * term_scale;
    }
    const auto rho = growth_ratios(s);
    const double A = *std::max_element(rho.begin(), rho.end());
    if (dt != 0.0 && A > 0.0) {
        v.truncation_bound = std::exp(log_model_term(A, s.order() + 1, dt));
        v.beyond_radius = std::abs(dt) * A * std::exp(1.0) >= 1.0;
    }
    return v;
}

Field evaluate_series(const TaylorSeries& s, double dt) {
    Field out = s.coeffs.front();
    double term_scale = 1.0;
    for (int j = 1; j <= s.order(); ++j) {
        term_scale *= dt / j;
        out = out + s.coeffs[j] * term_scale;
    }
    return out;
}

double radius_estimate(std::span<const double> derivs) {
    const int J = static_cast<int>(derivs.size()) - 1;
    if (J < 12) throw InsufficientData("radius_estimate needs at least 13 coefficients");
    std::vector<double> js, ys;
    for (int j = J / 2; j <= J; ++j) {
        if (derivs[j] == 0.0 || !std::isfinite(derivs[j])) continue;
        js.push_back(j);
        ys.push_back(std::log(std::abs(derivs[j])) - log_factorial(j));
    }
    if (js.empty()) return inf;
    auto design = [](const std::vector<double>& j) {
        Eigen::MatrixXd A(j.size(), 3);
        for (std::size_t i = 0; i < j.size(); ++i) A.row(i) << 1.0, j[i], j[i] * std::log(j[i]);
        return A;
    };
    const auto keep = trim_numerical_zeros(design(js), ys, 4);
    if (keep.size() < 4) throw InsufficientData("too few nonzero tail coefficients for a radius fit");
    std::vector<double> jk, yk;
    for (int i : keep) {
        jk.push_back(js[i]);
        yk.push_back(ys[i]);
    }
    const Eigen::MatrixXd A = design(jk);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(yk.data(), yk.size());
    const Eigen::VectorXd c = least_squares(A, y);
    if (c(2) < -0.25) return inf;
    const Eigen::VectorXd g = least_squares(A.leftCols(2), y);
    return std::exp(-g(1));
}

double radius_estimate(const TaylorSeries& s, const Point& x) {
    const std::size_t node = nearest_node(s.coeffs.front().grid(), x);
    std::vector<double> a;
    for (const Field& f : s.coeffs) a.push_back(f[node]);
    return radius_estimate(a);
}

GevreyFit gevrey_fit(std::span<const double> d, std::span<const int> k) {
    if (d.size() != k.size()) throw DomainError("gevrey_fit: value and index lists differ in length");
    std::vector<int> idx;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0.0 && std::isfinite(d[i]) && k[i] >= 1) idx.push_back(static_cast<int>(i));
    if (idx.size() < 8) throw InsufficientData("gevrey_fit needs at least 8 positive values");

    Eigen::MatrixXd A(idx.size(), 3);
    std::vector<double> y(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        A.row(i) << log_factorial(k[idx[i]]), double(k[idx[i]]), 1.0;
        y[i] = std::log(d[idx[i]]);
    }
    const auto keep = trim_numerical_zeros(A, y, 8);
    Eigen::MatrixXd As(keep.size(), 3);
    Eigen::VectorXd ys(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        As.row(i) = A.row(keep[i]);
        ys(i) = y[keep[i]];
    }
    const Eigen::VectorXd c = least_squares(As, ys);
    const Eigen::VectorXd res = ys - As * c;

    GevreyFit g;
    g.sigma = c(0);
    g.log_prefactor = c(1);
    g.intercept = c(2);
    g.residual = std::sqrt(res.squaredNorm() / double(res.size()));
    for (int i : keep) g.used.push_back(k[idx[i]]);
    g.k_min = *std::min_element(g.used.begin(), g.used.end());
    g.k_max = *std::max_element(g.used.begin(), g.used.end());
    return g;
}

std::vector<double> time_derivative_sequence(double alpha, double x, int k_max) {
    if (!(x > 0.0)) throw DomainError("time derivative sequence needs x > 0");
    std::vector<double> out(k_max, 0.0);
    if (alpha == 2.0) {
        const int n = 121;
        for (int i = 0; i < n; ++i) {
            const double t = std::pow(10.0, -3.0 + 3.5 * i / (n - 1));
            const auto dk = gaussian_time_derivatives(t, x, 1, k_max);
            for (int k = 1; k <= k_max; ++k) out[k - 1] = std::max(out[k - 1], std::abs(dk[k]));
        }
        return out;
    }
    KernelQuery q;
    q.params.alpha = alpha;
    q.params.dim = 1;
    q.t = 0.0;
    q.r = x;
    for (int k = 1; k <= k_max; ++k) {
        q.k = k;
        out[k - 1] = std::abs(eval_kernel_contour(q));
    }
    return out;
}

std::vector<double> space_derivative_sequence(double alpha, double t, int m_max) {
    std::vector<double> out;
    KernelQuery q;
    q.params.alpha = alpha;
    q.params.dim = 1;
    q.t = t;
    q.r = 0.0;
    for (int m = 2; m <= m_max; m += 2) {
        q.beta = {m, 0, 0};
        out.push_back(std::abs(eval_space_deriv(q)));
    }
    return out;
}

BackwardResult backward_solve(const Field& uT, const Field& uT_refined, const OperatorHandle& G, double delta, int J) {
    if (!(delta >= 0.0)) throw DomainError("backward step must be nonnegative");
    if (!(uT_refined.grid() == uT.grid().refined()))
        throw DomainError("refined terminal data must live on the refined grid");
    const TaylorSeries s = taylor_coeffs(uT, G, J, SeriesSign::Backward);
    const TaylorSeries fine = taylor_coeffs(uT_refined, G.on_grid(uT_refined.grid()), J, SeriesSign::Backward);
    GateReport gate = growth_gate(s, fine);
    if (!gate.pass) throw BackwardIllPosed(std::move(gate));

    BackwardResult r{uT, {}};
    r.certificate.A_est = gate.A_est;
    r.certificate.gate = std::move(gate);
    if (delta == 0.0) return r;
    r.certificate.truncation_bound = std::exp(log_model_term(r.certificate.A_est, J + 1, delta));

    if (G.route() == OperatorRoute::Spectral) {
        const double a = G.alpha(), sc = G.scale();
        r.field = spectral_multiply(uT, [a, sc, delta, J](double n2) {
            const double z = sc * std::pow(n2, 0.5 * a) * delta;
            double term = 1.0, sum = 1.0;
            for (int j = 1; j <= J; ++j) {
                term *= z / j;
                sum += term;
            }
            return sum;
        });
    } else {
        r.field = evaluate_series(s, delta);
    }
    return r;
}

}  // namespace fhk
