#include "fhk/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fhk/errors.hpp"

namespace fhk {

namespace {

constexpr double pi = std::numbers::pi;

enum Stream : std::uint32_t { SubordinatorStream = 0, NormalStream = 1 };

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> draw(std::uint64_t seed, std::uint64_t index, std::uint32_t stream, std::uint32_t word) {
    return philox4x32({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream, word},
                      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
}

// Uniform on the open interval (0, 1) from 53 random bits.
inline double unit(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t x = (std::uint64_t(a) << 21) ^ (b >> 11);
    return (double(x) + 0.5) * 0x1p-53;
}

double subordinator_draw(double alpha, std::uint64_t seed, std::uint64_t i) {
    if (alpha == 2.0) return 1.0;
    const double rho = 0.5 * alpha;
    const auto r = draw(seed, i, SubordinatorStream, 0);
    const double u = pi * unit(r[0], r[1]);
    const double e = -std::log(unit(r[2], r[3]));
    // Kanter: S = (A(U)/E)^{(1-rho)/rho},
    // A(u) = (sin(rho u)^rho sin((1-rho) u)^{1-rho} / sin u)^{1/(1-rho)}.
    const double logA =
        (rho * std::log(std::sin(rho * u)) + (1.0 - rho) * std::log(std::sin((1.0 - rho) * u)) - std::log(std::sin(u))) /
        (1.0 - rho);
    return std::exp((1.0 - rho) / rho * (logA - std::log(e)));
}

template <class Fn>
void parallel_blocks(std::size_t n, int workers, Fn&& fn) {
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(1, n / 4096))));
    if (w == 1) {
        fn(std::size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + w - 1) / w;
    for (int k = 0; k < w; ++k) {
        const std::size_t lo = k * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t M0 = 0xD2511F53, M1 = 0xCD9E8D57;
    constexpr std::uint32_t W0 = 0x9E3779B9, W1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += W0;
            k[1] += W1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(M0, c[0], hi0, lo0);
        mulhilo(M1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

void SamplerConfig::check() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    if (!(t > 0.0)) throw DomainError("sampling time must be positive");
    if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
    if (workers < 1) throw DomainError("worker count must be positive");
}

std::vector<double> sample_subordinator(double alpha, std::size_t n, std::uint64_t seed, int workers) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
    std::vector<double> out(n);
    parallel_blocks(n, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = subordinator_draw(alpha, seed, i);
    });
    return out;
}

std::vector<double> sample_position(const SamplerConfig& cfg) {
    cfg.check();
    const int d = cfg.dim;
    std::vector<double> out(cfg.samples * d);
    const double time = std::pow(cfg.t, 2.0 / cfg.alpha);
    parallel_blocks(cfg.samples, cfg.workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double scale = std::sqrt(2.0 * time * subordinator_draw(cfg.alpha, cfg.seed, i));
            for (int pair = 0; 2 * pair < d; ++pair) {
                const auto r = draw(cfg.seed, i, NormalStream, pair);
                const double rad = std::sqrt(-2.0 * std::log(unit(r[0], r[1])));
                const double th = 2.0 * pi * unit(r[2], r[3]);
                out[i * d + 2 * pair] = scale * rad * std::cos(th);
                if (2 * pair + 1 < d) out[i * d + 2 * pair + 1] = scale * rad * std::sin(th);
            }
        }
    });
    return out;
}

std::vector<double> radii(std::span<const double> positions, int dim) {
    std::vector<double> r(positions.size() / dim);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += positions[i * dim + a] * positions[i * dim + a];
        r[i] = std::sqrt(s);
    }
    return r;
}

HistogramResult histogram_compare(std::span<const double> samples, const std::function<double(double)>& density,
                                  int bins, double lo, double hi) {
    if (samples.size() < min_statistical_samples)
        throw InsufficientData("histogram_compare needs at least 10^4 samples");
    if (bins < 1 || !(hi > lo)) throw DomainError("histogram needs at least one bin on a nonempty range");
    const double n = double(samples.size());
    const double w = (hi - lo) / bins;

    // Raw cells: left tail, bins, right tail.
    std::vector<double> edges{-std::numeric_limits<double>::infinity()};
    for (int b = 0; b <= bins; ++b) edges.push_back(lo + b * w);
    edges.push_back(std::numeric_limits<double>::infinity());
    const std::size_t ncell = edges.size() - 1;

    std::vector<double> obs(ncell, 0.0), mass(ncell, 0.0);
    for (double x : samples) {
        std::size_t c;
        if (x < lo) c = 0;
        else if (x >= hi) c = ncell - 1;
        else c = 1 + std::min<std::size_t>(bins - 1, static_cast<std::size_t>((x - lo) / w));
        obs[c] += 1.0;
    }
    using boost::math::quadrature::gauss_kronrod;
    for (int b = 0; b < bins; ++b)
        mass[b + 1] = gauss_kronrod<double, 31>::integrate(density, edges[b + 1], edges[b + 2], 6, 1e-11);
    boost::math::quadrature::exp_sinh<double> es;
    mass[0] = es.integrate([&](double u) { return density(lo - u); }, 0.0, std::numeric_limits<double>::infinity());
    mass[ncell - 1] = es.integrate([&](double u) { return density(hi + u); }, 0.0, std::numeric_limits<double>::infinity());

    HistogramResult r;
    r.bins = bins;
    // Merge left to right until every cell expects at least 20 counts.
    std::vector<double> o, e, ed{edges[0]};
    double acc_o = 0.0, acc_e = 0.0;
    for (std::size_t c = 0; c < ncell; ++c) {
        acc_o += obs[c];
        acc_e += n * mass[c];
        if (acc_e >= 20.0) {
            o.push_back(acc_o);
            e.push_back(acc_e);
            ed.push_back(edges[c + 1]);
            acc_o = acc_e = 0.0;
        }
    }
    if (acc_e > 0.0 || acc_o > 0.0) {
        if (e.empty()) throw InsufficientData("too few samples for a single cell with 20 expected counts");
        o.back() += acc_o;
        e.back() += acc_e;
        ed.back() = edges.back();
    }
    r.cells = static_cast<int>(e.size());
    r.merged = static_cast<int>(ncell) - r.cells;
    if (r.cells < 2) throw InsufficientData("fewer than two cells after merging");
    for (std::size_t c = 0; c < e.size(); ++c) {
        const double dev = o[c] - e[c];
        r.chi_square += dev * dev / e[c];
        r.max_deviation = std::max(r.max_deviation, std::abs(dev) / std::sqrt(e[c]));
    }
    r.dof = r.cells - 1;
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.chi_square);
    r.edges = std::move(ed);
    r.observed = std::move(o);
    r.expected = std::move(e);
    return r;
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < min_statistical_samples) throw InsufficientData("ks_test needs at least 10^4 samples");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = double(s.size());
    KsResult r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        r.statistic = std::max({r.statistic, f - i / n, (i + 1) / n - f});
    }
    r.critical_1pct = 1.628 / std::sqrt(n);
    r.pass = r.statistic < r.critical_1pct;
    return r;
}

KsResult ks_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < min_statistical_samples || b.size() < min_statistical_samples)
        throw InsufficientData("ks_test needs at least 10^4 samples per side");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = double(x.size()), m = double(y.size());
    KsResult r;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        r.statistic = std::max(r.statistic, std::abs(i / n - j / m));
    }
    r.critical_1pct = 1.628 * std::sqrt((n + m) / (n * m));
    r.pass = r.statistic < r.critical_1pct;
    return r;
}

TailFit tail_slope(std::span<const double> radii, double survival_hi, double survival_lo, int levels) {
    const std::size_t n = radii.size();
    if (!(survival_hi > survival_lo && survival_lo > 0.0) || levels < 3)
        throw DomainError("tail_slope needs 0 < survival_lo < survival_hi and at least 3 levels");
    if (double(n) * survival_lo < 10.0) throw InsufficientData("too few samples in the tail window");
    std::vector<double> s(radii.begin(), radii.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    std::vector<double> lx, ly;
    for (int k = 0; k < levels; ++k) {
        const double q = survival_hi * std::pow(survival_lo / survival_hi, double(k) / (levels - 1));
        const std::size_t idx = static_cast<std::size_t>(q * n);
        if (idx == 0 || idx >= n) continue;
        // Exactly idx samples lie strictly above s[idx].
        lx.push_back(std::log(s[idx]));
        ly.push_back(std::log(double(idx) / n));
    }
    TailFit r;
    r.points = static_cast<int>(lx.size());
    if (r.points < 3) throw InsufficientData("too few tail levels");
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / r.points;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / r.points;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < r.points; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    r.slope = sxy / sxx;
    double rss = 0.0;
    for (int i = 0; i < r.points; ++i) {
        const double e = ly[i] - my - r.slope * (lx[i] - mx);
        rss += e * e;
    }
    r.stderr_slope = r.points > 2 ? std::sqrt(rss / (r.points - 2) / sxx) : 0.0;
    r.r_lo = std::exp(*std::min_element(lx.begin(), lx.end()));
    r.r_hi = std::exp(*std::max_element(lx.begin(), lx.end()));
    return r;
}

}  // namespace fhk
