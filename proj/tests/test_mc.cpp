#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "fhk/errors.hpp"
#include "fhk/kernel.hpp"
#include "fhk/mc.hpp"
#include "reference.hpp"

using namespace fhk;

TEST(Philox, KnownAnswerVectors) {
    using A4 = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Sampler, IndependentOfWorkerCount) {
    SamplerConfig c;
    c.alpha = 1.3;
    c.dim = 2;
    c.samples = 50000;
    c.seed = 99;
    const auto one = sample_position(c);
    c.workers = 3;
    const auto three = sample_position(c);
    ASSERT_EQ(one.size(), 100000u);
    EXPECT_EQ(std::memcmp(one.data(), three.data(), one.size() * sizeof(double)), 0);
    c.seed = 100;
    EXPECT_NE(sample_position(c), one);
}

TEST(Sampler, PrefixStable) {
    const auto a = sample_subordinator(0.7, 1000, 5);
    const auto b = sample_subordinator(0.7, 20000, 5, 4);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}

TEST(Sampler, SubordinatorAtAlphaOneIsLevy) {
    const auto s = sample_subordinator(1.0, 100000, 3);
    const KsResult ks = ks_test(s, [](double v) { return std::erfc(0.5 / std::sqrt(v)); });
    EXPECT_TRUE(ks.pass) << ks.statistic << " vs " << ks.critical_1pct;
}

TEST(Sampler, GaussianLimitHasUnitSubordinator) {
    for (double s : sample_subordinator(2.0, 100, 1)) EXPECT_EQ(s, 1.0);
}

TEST(Sampler, PositionsAtAlphaOneAreCauchy) {
    SamplerConfig c;
    c.alpha = 1.0;
    c.t = 0.7;
    c.samples = 100000;
    c.seed = 11;
    const auto x = sample_position(c);
    EXPECT_TRUE(ks_test(x, [](double v) { return ref::cauchy_cdf(v, 0.7); }).pass);
}

TEST(Sampler, HistogramAgreesWithKernel) {
    SamplerConfig c;
    c.alpha = 1.5;
    c.samples = 100000;
    c.seed = 21;
    const auto x = sample_position(c);
    KernelQuery q;
    q.params.alpha = 1.5;
    const HistogramResult h = histogram_compare(x, [&](double v) {
        KernelQuery qq = q;
        qq.r = std::abs(v);
        return eval_kernel(qq);
    }, 30, -6.0, 6.0);
    EXPECT_GT(h.p_value, 0.01);
    EXPECT_EQ(h.cells + h.merged, h.bins + 2);  // two tail cells
    EXPECT_EQ(h.edges.size(), h.observed.size() + 1);
    double total = 0.0;
    for (double e : h.expected) total += e;
    EXPECT_NEAR(total, 100000.0, 1.0);
}

TEST(Sampler, RadiiAreNorms) {
    const std::vector<double> x{3.0, 4.0, 0.0, -1.0};
    EXPECT_EQ(radii(x, 2), (std::vector<double>{5.0, 1.0}));
}

TEST(Stats, TailSlopeOfPareto) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double a : {0.5, 1.5}) {
        std::vector<double> r(200000);
        for (auto& v : r) v = std::pow(1.0 - u(rng), -1.0 / a);
        EXPECT_NEAR(tail_slope(r).slope, -a, 0.05);
    }
}

TEST(Stats, TwoSampleKs) {
    const auto a = sample_subordinator(0.8, 20000, 1);
    const auto b = sample_subordinator(0.8, 20000, 2);
    const auto c = sample_subordinator(1.2, 20000, 2);
    EXPECT_TRUE(ks_test(a, b).pass);
    EXPECT_FALSE(ks_test(a, c).pass);
}

TEST(Stats, RefuseSmallSamples) {
    std::vector<double> few(500, 0.0);
    EXPECT_THROW(ks_test(few, [](double) { return 0.5; }), InsufficientData);
    EXPECT_THROW(histogram_compare(few, [](double) { return 1.0; }, 10, -1.0, 1.0), InsufficientData);
    EXPECT_THROW(tail_slope(few), InsufficientData);
}

TEST(Sampler, ConfigIsChecked) {
    SamplerConfig c;
    c.alpha = 2.5;
    EXPECT_THROW(c.check(), DomainError);
    c.alpha = 1.0;
    c.t = 0.0;
    EXPECT_THROW(c.check(), DomainError);
}
