#include <gtest/gtest.h>

#include <cmath>

#include "gibbslab/generators.hpp"
#include "gibbslab/interaction.hpp"
#include "gibbslab/kernel.hpp"
#include "gibbslab/spin.hpp"

using namespace gibbslab;

namespace {

std::vector<Spin> spins(std::initializer_list<int> v) {
    std::vector<Spin> s;
    for (int x : v) s.push_back(static_cast<Spin>(x));
    return s;
}

}  // namespace

TEST(Spin, Encoding) {
    EXPECT_EQ(spinOfBit(0), 1);
    EXPECT_EQ(spinOfBit(1), -1);
    EXPECT_EQ(codeToBitstring(0b01, 3), "100");
    const SiteSet vol = SiteSet::fromRectangle(centeredBox(2, 1));
    auto c = SpinConfiguration::fromCode(vol, 0b101);
    EXPECT_EQ(c.spin(0), -1);
    EXPECT_EQ(c.spin(1), 1);
    EXPECT_EQ(c.spin(2), -1);
    EXPECT_EQ(c.code(), 0b101u);
    EXPECT_EQ(c.minusCount(), 2u);
    EXPECT_EQ(c.magnetization(), 9 - 4);
    c.flip(0);
    EXPECT_EQ(c.code(), 0b100u);
    EXPECT_EQ(c.spinAt(Point{5, 5}), 1);
}

TEST(Spin, LargeVolumeBitPacking) {
    const SiteSet vol = SiteSet::fromRectangle(centeredBox(2, 6));  // 169 sites
    SpinConfiguration c(vol, 1);
    c.set(100, -1);
    c.set(168, -1);
    EXPECT_EQ(c.minusCount(), 2u);
    EXPECT_EQ(c.spin(100), -1);
    EXPECT_EQ(c.spin(99), 1);
    c.flip(168);
    EXPECT_EQ(c.minusCount(), 1u);
}

TEST(Interaction, IsingTables) {
    const auto phi0 = ising(0.0, 2);
    EXPECT_EQ(normAbs(phi0).hi, 0.0);
    const auto phi = ising(1.0, 2);
    const SiteSet e1{{0, 0}, {1, 0}};
    EXPECT_EQ(evaluate(phi, e1, spins({1, 1})), -1.0);
    EXPECT_EQ(evaluate(phi, e1, spins({1, -1})), 1.0);
    EXPECT_EQ(evaluate(phi, SiteSet{{3, 0}, {4, 0}}, spins({1, 1})), -1.0);
    EXPECT_EQ(evaluate(phi, SiteSet{{0, 0}, {2, 0}}, spins({1, 1})), 0.0);
    EXPECT_EQ(phi.localFunctions().size(), 2u);
}

TEST(Interaction, Field) {
    const auto phi = isingWithField(1.0, 0.3, 2);
    EXPECT_DOUBLE_EQ(evaluate(phi, SiteSet{{4, 4}}, spins({1})), -0.3);
    EXPECT_FALSE(isSpinFlipSymmetric(phi));
    EXPECT_TRUE(isSpinFlipSymmetric(isingWithField(1.0, 0.0, 2)));
    EXPECT_TRUE(tableEqual(isingWithField(1.0, 0.0, 2), ising(1.0, 2)));
}

TEST(Interaction, AddAndScale) {
    const auto a = ising(0.3, 2);
    EXPECT_TRUE(tableEqual(add(a, zeroInteraction(2)), a));
    EXPECT_TRUE(tableEqual(add(ising(0.3, 2), ising(0.5, 2)), ising(0.8, 2), 1e-15));
    EXPECT_TRUE(tableEqual(scale(a, 2.0), ising(0.6, 2), 1e-15));
    EXPECT_THROW(add(ising(1, 2), ising(1, 3)), std::invalid_argument);
}

TEST(Interaction, TranslationInvariance) {
    Rng rng(3);
    RandomInteractionSpec spec;
    spec.shapes = 4;
    const auto phi = randomInteraction(spec, rng);
    for (const auto& f : phi.localFunctions()) {
        for (ConfigCode c = 0; c < f.table.size(); ++c) {
            std::vector<Spin> s;
            for (std::size_t k = 0; k < f.shape.size(); ++k) s.push_back(spinAt(c, k));
            EXPECT_EQ(evaluate(phi, translate(f.shape, Point{4, -7}), s), evaluate(phi, f.shape, s));
        }
    }
}

TEST(Interaction, IsingNorms) {
    for (int d : {1, 2, 3}) {
        for (double beta : {0.1, 1.0, 2.5}) {
            const auto n = allNorms(ising(beta, d));
            EXPECT_NEAR(n.var.hi, 4 * d * beta, 1e-12 * 4 * d * beta);
            EXPECT_NEAR(n.abs.hi, 2 * d * beta, 1e-12 * 2 * d * beta);
            EXPECT_EQ(n.abs.lo, n.abs.hi);
        }
    }
}

TEST(Interaction, NormOrderingOnRandomInteractions) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        RandomInteractionSpec spec;
        spec.dim = 1 + static_cast<int>(rng.below(3));
        spec.shapes = 1 + static_cast<int>(rng.below(5));
        spec.maxSites = 4;
        spec.maxDiameter = 2;
        const auto phi = randomInteraction(spec, rng);
        const auto n = allNorms(phi);
        EXPECT_LE(n.abs.hi, n.decay.hi * (1 + 1e-12));
        EXPECT_LE(n.decayPrime.hi, n.decay.hi * (1 + 1e-12));
        EXPECT_LE(n.var.hi, 2 * n.decay.hi * (1 + 1e-12));
        if (spec.dim <= 2) EXPECT_LE(normAbs(rectangleTransform(phi)).hi, n.decayPrime.hi * (1 + 1e-12));
        EXPECT_LE(normAbs(add(phi, ising(0.2, spec.dim))).hi, n.abs.hi + normAbs(ising(0.2, spec.dim)).hi + 1e-12);
    }
}

TEST(Interaction, DecayNormOfPowerLawMatchesShellConstant) {
    for (int d : {1, 2}) {
        const double eps = 0.5;
        const double s = 2 * d + eps;
        const auto phi = powerLaw(d, 0.3, s, 4);
        // M_eps by direct partial sums with an integral tail
        double m = 0.0;
        const int N = 200000;
        for (int n = 1; n <= N; ++n) {
            m += (std::pow(2 * n + 1, d) - std::pow(2 * n - 1, d)) * std::pow(n + 1, d) * std::pow(n, -s);
        }
        const Interval dec = normDecay(phi, 1e-10);
        EXPECT_LE(0.3 * m, dec.hi * (1 + 1e-9));
        EXPECT_GE(dec.hi, dec.lo);
        EXPECT_NEAR(dec.lo, 0.3 * m, 0.3 * m * 1e-3);
    }
}

TEST(Interaction, KernelNormsDivergeBelowThreshold) {
    EXPECT_THROW(normDecay(powerLaw(2, 1.0, 3.5, 3)), std::domain_error);
    EXPECT_NO_THROW(normAbs(powerLaw(2, 1.0, 3.5, 3)));
    EXPECT_THROW(powerLaw(2, 1.0, 2.0, 3), std::invalid_argument);
}

TEST(Interaction, KernelAbsNormBrackets) {
    const auto phi = powerLaw(2, 0.5, 3.0, 2);
    const Interval a = normAbs(phi, 1e-10);
    double direct = 0.0;
    for (int x = -300; x <= 300; ++x) {
        for (int y = -300; y <= 300; ++y) {
            if (x == 0 && y == 0) continue;
            direct += 0.5 * std::pow(std::max(std::abs(x), std::abs(y)), -3.0);
        }
    }
    EXPECT_LE(a.lo, a.hi);
    EXPECT_LE(direct, a.hi);
    EXPECT_NEAR(a.hi, direct, 2e-2 * direct);
}

TEST(Interaction, FlipSymmetry) {
    EXPECT_TRUE(isSpinFlipSymmetric(ising(0.7, 3)));
    Rng rng(5);
    RandomInteractionSpec spec;
    spec.flipSymmetric = true;
    EXPECT_TRUE(isSpinFlipSymmetric(randomInteraction(spec, rng)));
    EXPECT_TRUE(isSpinFlipSymmetric(powerLaw(2, 0.1, 5, 2)));
}

TEST(Interaction, ZeroOnNonL1Connected) {
    EXPECT_TRUE(isZeroOnNonL1Connected(ising(1, 2)));
    Interaction phi(2);
    phi.addLocal(SiteSet{{0, 0}, {2, 0}}, {1, 0, 0, 1});
    EXPECT_FALSE(isZeroOnNonL1Connected(phi));
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        RandomInteractionSpec spec;
        spec.shapes = 4;
        spec.maxSites = 4;
        EXPECT_TRUE(isZeroOnNonL1Connected(rectangleTransform(randomInteraction(spec, rng))));
    }
}

TEST(Interaction, RectangleTransform) {
    const auto rect = ising(0.4, 2);
    EXPECT_TRUE(tableEqual(rectangleTransform(rect), rect));

    Interaction tromino(2);
    const SiteSet L{{0, 0}, {1, 0}, {0, 1}};
    std::vector<double> t(8);
    for (std::size_t i = 0; i < 8; ++i) t[i] = 0.1 * static_cast<double>(i) - 0.3;
    tromino.addLocal(L, t);
    const auto tr = rectangleTransform(tromino);
    ASSERT_EQ(tr.localFunctions().size(), 1u);
    const auto& f = tr.localFunctions().front();
    EXPECT_EQ(f.shape.size(), 4u);
    // sites of the square in lex order: (0,0),(0,1),(1,0),(1,1); L misses (1,1)
    const SiteSet square = translate(f.shape, -f.shape[0]);
    EXPECT_EQ(square, (SiteSet{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    for (ConfigCode c = 0; c < 16; ++c) {
        // L's lex order is (0,0),(0,1),(1,0): the first three square sites
        EXPECT_DOUBLE_EQ(f.table[c], t[c & 7]);
    }
    EXPECT_TRUE(isSpinFlipSymmetric(rectangleTransform(ising(1, 2))));
}

TEST(Interaction, RectangleTransformCap) {
    Interaction phi(2);
    phi.addLocal(SiteSet{{0, 0}, {5, 5}}, {0, 1, 1, 0});
    EXPECT_THROW(rectangleTransform(phi), std::length_error);
}

TEST(Interaction, MaterializeAndMixedKernels) {
    const auto a = powerLaw(2, 0.2, 5, 2);
    const auto b = powerLaw(2, 0.1, 6, 1);
    const auto sum = add(a, b);
    ASSERT_TRUE(sum.hasKernel());
    EXPECT_EQ(sum.kernel()->exponent, 5);
    EXPECT_EQ(sum.localFunctions().size(), 4u);  // the four anchored pair classes at distance 1
    EXPECT_GT(sum.discardedKernelTail(), 0.0);
    const auto merged = add(a, powerLaw(2, 0.3, 5, 2));
    EXPECT_DOUBLE_EQ(merged.kernel()->amplitude, 0.5);
    EXPECT_TRUE(merged.localFunctions().empty());
}
