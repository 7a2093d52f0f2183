#include <cmath>

#include <gtest/gtest.h>

#include "fhk/errors.hpp"
#include "fhk/operator.hpp"
#include "reference.hpp"

using namespace fhk;

namespace {

KernelParams canonical(double alpha) {
    KernelParams p;
    p.alpha = alpha;
    return p;
}

Field bump(const Grid& g) {
    return Field::sample(g, [](const Point& x) { return std::exp(2.0 * std::cos(x[0] - 0.4)); });
}

double inner(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * a.grid().spacing();
}

}  // namespace

class OperatorAlpha : public ::testing::TestWithParam<double> {};

TEST_P(OperatorAlpha, CalibratedConstantMatchesClosedForm) {
    const double a = GetParam();
    EXPECT_NEAR(calibrate_constant(a, 1) / ref::laplacian_constant(a, 1), 1.0, 1e-8);
}

TEST_P(OperatorAlpha, PlaneWavesAreEigenfunctions) {
    const double a = GetParam();
    const Grid g = Grid::torus(1, 64);
    const OperatorHandle S = OperatorHandle::singular(canonical(a), g);
    for (int n : {1, 3, 7}) {
        const Field c = Field::sample(g, [n](const Point& x) { return std::cos(n * x[0]); });
        const Field expected = c * -std::pow(n, a);
        EXPECT_LT((S.apply(c) - expected).sup_norm(), 1e-4 * std::pow(n, a)) << "mode " << n;
        EXPECT_LT((OperatorHandle::spectral(a, g).apply(c) - expected).sup_norm(), 1e-12 * std::pow(n, a));
    }
}

TEST_P(OperatorAlpha, SelfAdjointOnTheTorus) {
    const double a = GetParam();
    const Grid g = Grid::torus(1, 64);
    const Field f = bump(g);
    const Field h = Field::sample(g, [](const Point& x) { return std::sin(x[0]) + 0.2 * std::cos(4.0 * x[0]); });
    for (const OperatorHandle& G : {OperatorHandle::spectral(a, g), OperatorHandle::singular(canonical(a), g)}) {
        const double lhs = inner(G.apply(f), h), rhs = inner(f, G.apply(h));
        EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(std::abs(lhs), 1.0));
    }
}

TEST_P(OperatorAlpha, NonPositiveAtStrictMaximum) {
    const double a = GetParam();
    const Grid g = Grid::torus(1, 64);
    for (double shift : {0.0, 0.4, 1.3}) {
        const Field f = Field::sample(g, [shift](const Point& x) { return std::exp(std::cos(x[0] - shift)); });
        std::size_t imax = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] > f[imax]) imax = i;
        EXPECT_LE(OperatorHandle::singular(canonical(a), g).apply(f)[imax], 0.0);
    }
}

TEST_P(OperatorAlpha, SpectralRadiusBoundCoversSymbol) {
    const double a = GetParam();
    const Grid g = Grid::torus(1, 32);
    const OperatorHandle G = OperatorHandle::spectral(a, g);
    EXPECT_GE(G.spectral_radius_bound(), std::pow(16.0, a));
}

INSTANTIATE_TEST_SUITE_P(Alphas, OperatorAlpha, ::testing::Values(0.5, 1.0, 1.5));

TEST(Operator, ErrorDecreasesUnderRefinement) {
    // Smooth data: the remaining error is dominated by the graded near-field panels,
    // which converge at least like h^{2 - alpha}.
    for (double a : {0.5, 1.0, 1.5}) {
        std::vector<double> err;
        for (int n : {16, 32, 64}) {
            const Grid g = Grid::torus(1, n);
            SingularOptions o;
            o.gauss_nodes = 4;
            const OperatorHandle S = OperatorHandle::singular(canonical(a), g, o);
            err.push_back((S.apply(bump(g)) - OperatorHandle::spectral(a, g).apply(bump(g))).sup_norm());
        }
        const double slope = std::log2(err[1] / err[2]);
        EXPECT_LT(err[2], err[1]);
        EXPECT_GT(slope, (2.0 - a) - 0.5) << "alpha " << a << " errors " << err[0] << " " << err[1] << " " << err[2];
    }
}

TEST(Operator, ScaleFollowsKappa) {
    KernelParams p = canonical(1.0);
    p.kappa = Coefficient::constant(2.5 / ref::pi);
    const Grid g = Grid::torus(1, 32);
    EXPECT_NEAR(OperatorHandle::spectral(p, g).scale(), 2.5, 1e-14);
    const Field c = Field::sample(g, [](const Point& x) { return std::cos(2.0 * x[0]); });
    EXPECT_LT((OperatorHandle::singular(p, g).apply(c) + c * 5.0).sup_norm(), 5e-4);
}

TEST(Operator, OnGridKeepsRoute) {
    const OperatorHandle S = OperatorHandle::singular(canonical(0.5), Grid::torus(1, 16));
    const OperatorHandle T = S.on_grid(Grid::torus(1, 32));
    EXPECT_EQ(T.route(), OperatorRoute::SingularIntegral);
    EXPECT_EQ(T.grid().nodes_per_axis(), 32);
}

TEST(Operator, LineRouteOnGaussian) {
    // (-Laplacian)^{1/2} exp(-a x^2) at x = 0 equals 2 sqrt(a / pi).
    const double a = 8.0;
    const Grid line = Grid::line(1, 256, ref::pi);
    const Field f = Field::sample(line, [a](const Point& x) { return std::exp(-a * x[0] * x[0]); });
    const Field Gf = OperatorHandle::singular(canonical(1.0), line).apply(f);
    EXPECT_NEAR(Gf[128], -2.0 * std::sqrt(a / ref::pi), 1e-4 * 2.0 * std::sqrt(a / ref::pi));
}

TEST(Operator, LineRouteRejectsDataAtTheEdge) {
    const Grid line = Grid::line(1, 64, 4.0);
    const Field one = Field::constant(line, 1.0);
    EXPECT_THROW(OperatorHandle::singular(canonical(0.5), line).apply(one), QuadratureFailure);
}

TEST(Operator, SingularRouteRejectsGaussianLimit) {
    EXPECT_THROW(OperatorHandle::singular(canonical(2.0), Grid::torus(1, 16)), DomainError);
    EXPECT_THROW(calibrate_constant(1.9999, 1), DomainError);
}
