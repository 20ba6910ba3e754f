#include <gtest/gtest.h>

#include <cmath>

#include "gibbslab/generators.hpp"
#include "gibbslab/gibbs.hpp"
#include "gibbslab/montecarlo.hpp"

using namespace gibbslab;

TEST(Rng, PinnedStream) {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
    std::mt19937_64 ref(5);
    Rng c(5);
    EXPECT_EQ(c.uniform(), static_cast<double>(ref() >> 11) / 9007199254740992.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(c.below(7), 7u);
    }
}

TEST(MonteCarlo, ConditionalMatchesExactState) {
    Rng rng(61);
    RandomInteractionSpec spec;
    spec.shapes = 4;
    spec.maxSites = 3;
    spec.amplitude = 0.7;
    const auto phi = add(add(randomInteraction(spec, rng), ising(0.3, 2)), powerLaw(2, 0.05, 5, 2));
    const SiteSet vol = SiteSet::fromRectangle(centeredBox(2, 1));
    const auto bc = BoundaryCondition::explicitSpins(-1, {{Point{2, 2}, 1}});
    const auto mu = buildGibbs(phi, vol, bc, 2);
    SpinConfiguration init(vol, 1);
    for (std::size_t i = 0; i < vol.size(); ++i) init.set(i, rng.uniform() < 0.5 ? 1 : -1);
    GlauberSampler s(phi, vol, bc, 2, init);
    for (int step = 0; step < 200; ++step) {
        const std::size_t i = rng.below(vol.size());
        const ConfigCode c = s.state().code();
        const ConfigCode plus = c & ~(ConfigCode{1} << i);
        const ConfigCode minus = c | (ConfigCode{1} << i);
        const double exact = mu.probability(plus) / (mu.probability(plus) + mu.probability(minus));
        EXPECT_NEAR(s.conditionalPlus(i), exact, 1e-12);
        s.update(i, rng.uniform());
    }
}

TEST(MonteCarlo, StationaryMagnetization) {
    const auto phi = isingWithField(0.4, 0.1, 2);
    ChainConfig cfg;
    cfg.volume = Rectangle{{0, 0}, {2, 2}};
    cfg.boundary = BoundaryCondition::minus();
    cfg.sweeps = 40000;
    cfg.burnIn = 1000;
    cfg.seed = 3;
    const auto est = magnetization(phi, cfg, Point{1, 1});
    const auto mu = buildGibbs(phi, SiteSet::fromRectangle(cfg.volume), cfg.boundary, 1);
    const double exact = siteMagnetization(mu, Point{1, 1});
    EXPECT_GT(est.standardError, 0.0);
    EXPECT_LT(std::fabs(est.mean - exact), 4 * est.standardError);
    EXPECT_EQ(est.batches, kBatchCount);
}

TEST(MonteCarlo, Deterministic) {
    ChainConfig cfg;
    cfg.volume = Rectangle{{0, 0}, {3, 3}};
    cfg.sweeps = 300;
    cfg.burnIn = 20;
    cfg.seed = 99;
    std::vector<TrajectoryRow> t1, t2;
    const auto a = magnetization(ising(0.6, 2), cfg, Point{1, 1}, &t1);
    const auto b = magnetization(ising(0.6, 2), cfg, Point{1, 1}, &t2);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.standardError, b.standardError);
    ASSERT_EQ(t1.size(), t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) EXPECT_EQ(t1[i].energyPerSite, t2[i].energyPerSite);
}

TEST(MonteCarlo, MirroredChainsStayFlipped) {
    const auto phi = add(ising(0.5, 2), powerLaw(2, 0.03, 5.0, 2));
    const SiteSet vol = SiteSet::fromRectangle(Rectangle{{0, 0}, {5, 5}});
    GlauberSampler plus(phi, vol, BoundaryCondition::plus(), 2, SpinConfiguration(vol, 1));
    GlauberSampler minus(phi, vol, BoundaryCondition::minus(), 2, SpinConfiguration(vol, -1));
    Rng r1(7), r2(7);
    for (int k = 0; k < 50; ++k) {
        plus.sweep(r1);
        minus.sweep(r2, true);
    }
    for (std::size_t i = 0; i < vol.size(); ++i) EXPECT_EQ(plus.state().spin(i), -minus.state().spin(i));
    EXPECT_NEAR(plus.energy(), minus.energy(), 1e-9);
}

TEST(MonteCarlo, BatchMeans) {
    std::vector<double> constant(100, 0.25);
    const auto e = batchMeans(constant, Point{0, 0});
    EXPECT_DOUBLE_EQ(e.mean, 0.25);
    EXPECT_EQ(e.standardError, 0.0);
    std::vector<double> alt;
    for (int i = 0; i < 40; ++i) alt.push_back(i < 20 ? 1.0 : -1.0);
    const auto f = batchMeans(alt, Point{0, 0});
    EXPECT_DOUBLE_EQ(f.mean, 0.0);
    // 20 batch means of +-1: sample sd sqrt(20/19), se = sd / sqrt(20)
    EXPECT_NEAR(f.standardError, std::sqrt(20.0 / 19.0) / std::sqrt(20.0), 1e-12);
    EXPECT_THROW(batchMeans(std::vector<double>(5, 0.0), Point{0, 0}), std::invalid_argument);
}

TEST(MonteCarlo, ConfigValidation) {
    ChainConfig cfg;
    cfg.volume = Rectangle{{0, 0}, {1, 1}};
    EXPECT_NO_THROW(cfg.validate());
    cfg.burnIn = cfg.sweeps;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.burnIn = 0;
    cfg.thinning = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.thinning = 1;
    cfg.init = InitialState::Explicit;
    cfg.initialSpins = {1, -1};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.initialSpins = {1, -1, 1, -1};
    EXPECT_EQ(cfg.initialConfiguration().magnetization(), 0);
    EXPECT_EQ(initialStateFromString("minus"), InitialState::Minus);
    EXPECT_THROW(initialStateFromString("up"), std::invalid_argument);
    ChainConfig bad;
    bad.volume = Rectangle{{0, 0}, {1, 1}};
    EXPECT_THROW(magnetization(ising(1, 2), bad, Point{4, 4}), std::invalid_argument);
}

TEST(MonteCarlo, GlauberStepBySite) {
    const SiteSet vol = SiteSet::fromRectangle(Rectangle{{0, 0}, {1, 1}});
    GlauberSampler s(ising(1.0, 2), vol, BoundaryCondition::plus(), 1, SpinConfiguration(vol, 1));
    glauberStep(s, Point{0, 0}, 0.999999);
    EXPECT_EQ(s.state().spin(0), -1);
    glauberStep(s, Point{0, 0}, 0.0);
    EXPECT_EQ(s.state().spin(0), 1);
    EXPECT_THROW(glauberStep(s, Point{3, 3}, 0.5), std::invalid_argument);
}

TEST(MonteCarlo, CoexistenceInitialState) {
    CoexistenceSettings s;
    s.side = 8;
    s.sweeps = 600;
    s.burnIn = 100;
    s.init = InitialState::Explicit;
    EXPECT_THROW(coexistenceIndicator(ising(1.0, 2), s), std::invalid_argument);

    s.init = InitialState::Plus;
    const auto r = coexistenceIndicator(isingWithField(1.0, 0.5, 2), s);
    EXPECT_FALSE(r.symmetric);
    EXPECT_GT(r.mPlus, 0.9);
    EXPECT_GT(r.mMinus, 0.9);

    s.init = InitialState::BoundaryAligned;
    const auto cold = coexistenceIndicator(ising(1.0, 2), s);
    EXPECT_TRUE(cold.symmetric);
    EXPECT_GT(cold.gap, 1.5);
}
