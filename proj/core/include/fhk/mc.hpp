#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fhk {

/// Philox4x32-10 counter-based generator (Salmon et al.).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

struct SamplerConfig {
    double alpha = 1.0;
    double t = 1.0;
    int dim = 1;
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
    /// Caps parallelism; the output does not depend on it.
    int workers = 1;

    void check() const;
};

/// One-sided stable law with Laplace transform exp(-lambda^{alpha/2}) by
/// Kanter's representation. Sample i depends only on (seed, i). alpha = 2
/// returns ones.
std::vector<double> sample_subordinator(double alpha, std::size_t n, std::uint64_t seed, int workers = 1);

/// X_i = sqrt(2 t^{2/alpha} S_i) Z_i, Z_i standard normal in R^d. Row-major,
/// dim values per sample. S_i is the same draw sample_subordinator returns.
std::vector<double> sample_position(const SamplerConfig& cfg);

/// |X_i| for row-major samples.
std::vector<double> radii(std::span<const double> positions, int dim);

/// Smallest sample count accepted by the statistical tests below.
inline constexpr std::size_t min_statistical_samples = 10000;

struct HistogramResult {
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 0.0;
    /// max |O - E| / sqrt(E) over the cells.
    double max_deviation = 0.0;
    int bins = 0;
    int cells = 0;   ///< after merging bins with fewer than 20 expected counts
    int merged = 0;  ///< bins - cells
    std::vector<double> edges;  ///< cell edges; first and last cells are the tails
    std::vector<double> observed;
    std::vector<double> expected;
};

/// Chi-square of 1-D samples against a density: `bins` equal bins on [lo, hi]
/// plus the two tails, expected counts from integrals of the density.
HistogramResult histogram_compare(std::span<const double> samples, const std::function<double(double)>& density,
                                  int bins, double lo, double hi);

struct KsResult {
    double statistic = 0.0;
    double critical_1pct = 0.0;  ///< 1.628 / sqrt(N)
    bool pass = false;
};

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);
/// Two-sample version.
KsResult ks_test(std::span<const double> a, std::span<const double> b);

struct TailFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double r_lo = 0.0;
    double r_hi = 0.0;
    int points = 0;
};

/// Slope of log P(|X| > R) against log R, with R taken at survival levels
/// log-spaced in [survival_lo, survival_hi].
TailFit tail_slope(std::span<const double> radii, double survival_hi = 1e-2, double survival_lo = 1e-3, int levels = 13);

}  // namespace fhk
