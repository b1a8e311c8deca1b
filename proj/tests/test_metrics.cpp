#include <gtest/gtest.h>

#include <cmath>

#include "greybox/errors.h"
#include "greybox/metrics.h"
#include "support.h"

using namespace greybox;

namespace {

PairedSeries paired(std::vector<double> y, std::vector<double> y_star) {
    PairedSeries p;
    for (std::size_t i = 0; i < y.size(); ++i) p.t.push_back(60.0 * i);
    p.y = std::move(y);
    p.y_star = std::move(y_star);
    return p;
}

}  // namespace

TEST(Metrics, HandCase) {
    const auto p = paired({0, 2, 4}, {0, 2, 3});
    EXPECT_NEAR(nrmsre(p), std::sqrt(1.0 / 16.0 / 3.0), 1e-15);
    EXPECT_NEAR(nrmsre(p), 0.14434, 1e-4);
    EXPECT_NEAR(r_squared(p), 36.0 / (8.0 * 14.0 / 3.0), 1e-12);
    EXPECT_NEAR(r_squared(p), 0.9642, 1e-4);
    EXPECT_NEAR(gof(p), 100.0 * (1.0 - std::sqrt(1.0 / 8.0)), 1e-12);
    EXPECT_NEAR(gof(p), 64.645, 1e-3);
}

TEST(Metrics, PerfectFitExact) {
    const auto p = paired({1, 5, 2, 8}, {1, 5, 2, 8});
    EXPECT_EQ(nrmsre(p), 0.0);
    EXPECT_EQ(r_squared(p), 1.0);
    EXPECT_EQ(gof(p), 100.0);
}

TEST(Metrics, MeanPredictionGivesZeroGof) {
    const auto p = paired({1, 2, 3, 6}, {3, 3, 3, 3});
    EXPECT_NEAR(gof(p), 0.0, 1e-12);
    EXPECT_THROW(r_squared(p), DegenerateVariance);
}

TEST(Metrics, Degenerate) {
    const auto p = paired({2, 2, 2}, {1, 2, 3});
    EXPECT_THROW(nrmsre(p), DegenerateRange);
    EXPECT_THROW(gof(p), DegenerateVariance);
    EXPECT_THROW(r_squared(p), DegenerateVariance);
}

TEST(Metrics, LengthMismatchRejected) {
    PairedSeries p = paired({1, 2, 3}, {1, 2});
    EXPECT_THROW(nrmsre(p), InvalidInput);
}

TEST(Metrics, Properties) {
    testsupport::Gen gen(50);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = gen.integer(3, 50);
        auto y = gen.uniforms(n, 0.0, 50.0);
        auto ys = gen.uniforms(n, 0.0, 50.0);
        const auto p = paired(y, ys);
        const double a = gen.uniform(0.1, 10.0), b = gen.uniform(-20.0, 20.0);
        std::vector<double> ya(n), ysa(n), affine(n);
        for (int i = 0; i < n; ++i) {
            ya[i] = a * y[i] + b;
            ysa[i] = a * ys[i] + b;
            affine[i] = a * y[i] + b;
        }
        const auto q = paired(ya, ysa);
        ASSERT_GE(nrmsre(p), 0.0);
        ASSERT_NEAR(nrmsre(q), nrmsre(p), 1e-9);
        const double r2 = r_squared(p);
        ASSERT_GE(r2, 0.0);
        ASSERT_LE(r2, 1.0);
        ASSERT_LE(gof(p), 100.0);
        ASSERT_NEAR(r_squared(paired(y, affine)), 1.0, 1e-12);
    }
}

TEST(Align, PassThroughAndInterpolation) {
    const TimedSeries sim{{0, 60, 120, 180}, {1, 2, 3, 4}};
    const auto same = align(sim, sim);
    EXPECT_EQ(same.y, same.y_star);
    EXPECT_EQ(same.t, sim.t);

    const TimedSeries meas{{30, 90, 150}, {10, 20, 30}};
    const auto p = align(meas, sim);
    EXPECT_EQ(p.t, (std::vector<double>{60, 120}));
    EXPECT_NEAR(p.y[0], 15.0, 1e-12);
    EXPECT_NEAR(p.y[1], 25.0, 1e-12);
    EXPECT_EQ(p.y_star, (std::vector<double>{2, 3}));
}

TEST(Align, DisjointSpans) {
    const TimedSeries a{{0, 60}, {1, 2}};
    const TimedSeries b{{600, 660}, {1, 2}};
    EXPECT_THROW(align(a, b), AlignmentError);
}

TEST(RollingMean, Trailing) {
    const std::vector<double> x{3, 6, 9, 12};
    EXPECT_EQ(rolling_mean(x, 3), (std::vector<double>{3, 4.5, 6, 9}));
    EXPECT_EQ(rolling_mean(x, 1), x);
    EXPECT_THROW(rolling_mean(x, 0), InvalidInput);
}
