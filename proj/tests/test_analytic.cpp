#include <cmath>

#include <gtest/gtest.h>

#include "fhk/analytic.hpp"
#include "fhk/oracles.hpp"
#include "reference.hpp"

using namespace fhk;

namespace {

KernelParams canonical(double alpha) {
    KernelParams p;
    p.alpha = alpha;
    return p;
}

// Band-limited data with known modes, evolved by the exact multiplier written out here.
Field modes(const Grid& g, double alpha, double t) {
    return Field::sample(g, [=](const Point& x) {
        double s = 0.0;
        for (int n = 1; n <= 6; ++n) s += std::exp(-t * std::pow(n, alpha)) * std::cos(n * x[0] + 0.5 * n) / n;
        return s;
    });
}

}  // namespace

TEST(Analytic, CoefficientsAreSpectralTimeDerivatives) {
    const double a = 1.5;
    const Grid g = Grid::torus(1, 32);
    const Field a0 = Field::sample(g, [](const Point& x) { return std::cos(x[0]) + 0.5 * std::sin(2.0 * x[0]); });
    const TaylorSeries s = taylor_coeffs(a0, OperatorHandle::spectral(a, g), 10, SeriesSign::Forward);
    ASSERT_EQ(s.order(), 10);
    for (int j = 0; j <= 10; ++j) {
        const Field expected = Field::sample(g, [&](const Point& x) {
            return std::pow(-1.0, j) * (std::cos(x[0]) + 0.5 * std::pow(2.0, a * j) * std::sin(2.0 * x[0]));
        });
        EXPECT_LT((s.coeffs[j] - expected).sup_norm(), 1e-12 * std::pow(2.0, a * j)) << "j = " << j;
    }
}

TEST(Analytic, IteratedSingularRouteMatchesSpectral) {
    const double a = 1.0;
    const Grid g = Grid::torus(1, 64);
    const Field a0 = modes(g, a, 0.0);
    const TaylorSeries sp = taylor_coeffs(a0, OperatorHandle::spectral(a, g), 4, SeriesSign::Forward);
    const TaylorSeries si = taylor_coeffs(a0, OperatorHandle::singular(canonical(a), g), 4, SeriesSign::Forward);
    for (int j = 0; j <= 4; ++j)
        EXPECT_LT((sp.coeffs[j] - si.coeffs[j]).sup_norm(), 1e-4 * std::max(1.0, sp.sup_norms[j]));
}

TEST(Analytic, BackwardSignFlipsOddCoefficients) {
    const Grid g = Grid::torus(1, 16);
    const Field a0 = Field::sample(g, [](const Point& x) { return std::cos(3.0 * x[0]); });
    const OperatorHandle G = OperatorHandle::spectral(0.5, g);
    const TaylorSeries f = taylor_coeffs(a0, G, 5, SeriesSign::Forward);
    const TaylorSeries b = taylor_coeffs(a0, G, 5, SeriesSign::Backward);
    for (int j = 0; j <= 5; ++j) EXPECT_LT((f.coeffs[j] * std::pow(-1.0, j) - b.coeffs[j]).sup_norm(), 1e-12);
}

TEST(Analytic, SeriesSumsTheSemigroup) {
    const Grid g = Grid::torus(1, 32);
    const TaylorSeries s = taylor_coeffs(modes(g, 1.0, 0.0), OperatorHandle::spectral(1.0, g), 40, SeriesSign::Forward);
    const Field u = evaluate_series(s, 0.2);
    EXPECT_LT((u - modes(g, 1.0, 0.2)).sup_norm(), 1e-12);
    const SeriesValue v = evaluate_series(s, 0.2, Point{0.0, 0.0, 0.0});
    EXPECT_NEAR(v.value, modes(g, 1.0, 0.2)[16], 1e-12);
    EXPECT_GE(v.truncation_bound, 0.0);
}

TEST(Analytic, RoundTripWithinTruncationBound) {
    for (double a : {0.5, 1.0, 1.5}) {
        const Grid g = Grid::torus(1, 32);
        const double delta = 0.2;
        const OperatorHandle G = OperatorHandle::spectral(a, g);
        const BackwardResult r =
            backward_solve(modes(g, a, delta), modes(g.refined(), a, delta), G, delta, 24);
        const double err = (r.field - modes(g, a, 0.0)).sup_norm();
        EXPECT_TRUE(r.certificate.gate.pass);
        EXPECT_LE(err, r.certificate.truncation_bound + 1e-12) << "alpha " << a;
        EXPECT_LT(err, 1e-4);
    }
}

TEST(Analytic, GateAcceptsEigenData) {
    for (double a : {0.5, 1.0, 1.5})
        for (int K : {1, 3, 5}) {
            auto data = [K](const Grid& g) {
                return Field::sample(g, [K](const Point& x) {
                    double s = 0.0;
                    for (int n = 1; n <= K; ++n) s += std::cos(n * x[0]) / K;
                    return s;
                });
            };
            const Grid g = Grid::torus(1, 32);
            const OperatorHandle G = OperatorHandle::spectral(a, g);
            const TaylorSeries c = taylor_coeffs(data(g), G, 16, SeriesSign::Backward);
            const TaylorSeries f = taylor_coeffs(data(g.refined()), G.on_grid(g.refined()), 16, SeriesSign::Backward);
            const GateReport r = growth_gate(c, f);
            EXPECT_TRUE(r.pass) << a << " " << K;
            EXPECT_LE(r.A_est, std::pow(K, a) * (1.0 + 1e-6)) << a << " " << K;
        }
}

TEST(Analytic, GateRefusesRoughData) {
    const double a = 1.5;
    auto rough = [](const Grid& g) {
        const int m = g.nodes_per_axis() / 2;
        return Field::sample(g, [m](const Point& x) {
            double s = 0.0;
            for (int n = 1; n <= m; ++n) s += std::cos(n * x[0]) / (double(n) * n);
            return s;
        });
    };
    const Grid g = Grid::torus(1, 32);
    const OperatorHandle G = OperatorHandle::spectral(a, g);
    try {
        backward_solve(rough(g), rough(g.refined()), G, 0.2, 24);
        FAIL() << "rough data must be refused";
    } catch (const BackwardIllPosed& e) {
        EXPECT_FALSE(e.report().pass);
        EXPECT_GT(e.report().refinement_growth, 1.25);
        ASSERT_EQ(e.report().trace.size(), 2u);
        EXPECT_GT(e.report().trace[1].second, e.report().trace[0].second);
    }
}

TEST(Analytic, GateNeedsEnoughCoefficients) {
    const Grid g = Grid::torus(1, 16);
    const OperatorHandle G = OperatorHandle::spectral(1.0, g);
    const Field a0 = Field::sample(g, [](const Point& x) { return std::cos(x[0]); });
    const TaylorSeries s = taylor_coeffs(a0, G, 4, SeriesSign::Backward);
    const TaylorSeries f = taylor_coeffs(Field::sample(g.refined(), [](const Point& x) { return std::cos(x[0]); }),
                                         G.on_grid(g.refined()), 4, SeriesSign::Backward);
    EXPECT_THROW(growth_gate(s, f), InsufficientData);
}

TEST(Analytic, BackwardDeltaZeroIsIdentity) {
    const Grid g = Grid::torus(1, 32);
    const Field u = modes(g, 1.0, 0.3);
    const BackwardResult r = backward_solve(u, modes(g.refined(), 1.0, 0.3), OperatorHandle::spectral(1.0, g), 0.0, 24);
    EXPECT_LT((r.field - u).sup_norm(), 1e-15);
}

TEST(Analytic, RadiusOfKnownSeries) {
    // f(s) = 1 / (1 + s^2 / 4): radius 2, odd coefficients vanish.
    std::vector<double> d(31, 0.0);
    for (int j = 0; j <= 30; j += 2) d[j] = std::pow(-0.25, j / 2) * std::tgamma(j + 1.0);
    EXPECT_NEAR(radius_estimate(d), 2.0, 0.02);
    // 1 / (1 - s/3): radius 3.
    for (int j = 0; j <= 30; ++j) d[j] = std::pow(3.0, -j) * std::tgamma(j + 1.0);
    EXPECT_NEAR(radius_estimate(d), 3.0, 0.03);
    // exp(s) is entire.
    std::vector<double> e(31, 1.0);
    EXPECT_TRUE(std::isinf(radius_estimate(e)));
}

TEST(Analytic, RadiusIgnoresScalarRescaling) {
    std::vector<double> d(25), d3(25);
    for (int k = 0; k <= 24; ++k) {
        d[k] = std::abs(poisson_time_derivative(k, 0.0, 1.5));
        d3[k] = 3.7 * d[k];
    }
    EXPECT_NEAR(radius_estimate(d3), radius_estimate(d), 1e-9);
    EXPECT_NEAR(radius_estimate(d), 1.5, 0.075);

    const Grid g = Grid::torus(1, 32);
    const OperatorHandle G = OperatorHandle::spectral(1.0, g);
    const TaylorSeries s = taylor_coeffs(modes(g, 1.0, 0.5), G, 30, SeriesSign::Forward);
    const TaylorSeries s2 = taylor_coeffs(modes(g, 1.0, 0.5) * 12.0, G, 30, SeriesSign::Forward);
    const Point x{0.3, 0.0, 0.0};
    const double r1 = radius_estimate(s, x), r2 = radius_estimate(s2, x);
    if (std::isinf(r1)) EXPECT_TRUE(std::isinf(r2));
    else EXPECT_NEAR(r2, r1, 1e-9 * std::max(1.0, r1));
}

TEST(Analytic, RadiusNeedsEnoughCoefficients) {
    std::vector<double> d(8, 1.0);
    EXPECT_THROW(radius_estimate(d), InsufficientData);
}

TEST(Analytic, GevreyFitRecoversSyntheticOrder) {
    std::vector<double> d;
    std::vector<int> k;
    for (int i = 1; i <= 20; ++i) {
        k.push_back(i);
        const double v = std::exp(1.5 * std::lgamma(i + 1.0) + 0.7 * i);
        d.push_back(i % 4 == 0 ? v * 1e-18 : v);  // numerical zeros at every fourth index
    }
    const GevreyFit f = gevrey_fit(d, k);
    EXPECT_NEAR(f.sigma, 1.5, 1e-6);
    EXPECT_NEAR(f.log_prefactor, 0.7, 1e-5);
    EXPECT_EQ(f.used.size(), 15u);
}

TEST(Analytic, GevreyFitNeedsEightPoints) {
    std::vector<double> d{1, 2, 6, 24, 120, 720, 5040};
    std::vector<int> k{1, 2, 3, 4, 5, 6, 7};
    EXPECT_THROW(gevrey_fit(d, k), InsufficientData);
}

TEST(Analytic, DerivativeSequencesMatchClosedForms) {
    const auto td = time_derivative_sequence(1.0, 1.0, 12);
    ASSERT_EQ(td.size(), 12u);
    // Even orders vanish at alpha = 1 (the kernel is odd in t), so compare on the scale k!.
    for (int k = 1; k <= 12; ++k)
        EXPECT_NEAR(td[k - 1], std::abs(ref::poisson_dt(k, 0.0, 1.0)), 1e-8 * std::tgamma(k + 1.0)) << "k = " << k;
    const auto sd = space_derivative_sequence(1.0, 1.0, 12);
    ASSERT_EQ(sd.size(), 6u);
    for (int i = 0; i < 6; ++i)
        EXPECT_NEAR(sd[i] / std::abs(stable_space_derivative_at_origin(1.0, 2 * i + 2)), 1.0, 1e-8);
}
