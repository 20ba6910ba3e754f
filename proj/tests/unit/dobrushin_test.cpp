#include <gtest/gtest.h>

#include <cmath>

#include "gibbslab/dobrushin.hpp"
#include "gibbslab/generators.hpp"
#include "oracles.hpp"

using namespace gibbslab;

TEST(Dobrushin, IsingNearestNeighbour) {
    for (double beta : {0.05, 0.2, 0.6, 2.0}) {
        const auto phi = ising(beta, 2);
        EXPECT_NEAR(rho(phi, Point{1, 0}, 1), std::tanh(2 * beta) / 2, 1e-14);
        EXPECT_NEAR(rho(phi, Point{0, -1}, 1), std::tanh(2 * beta) / 2, 1e-14);
        EXPECT_EQ(rho(phi, Point{1, 1}, 1), 0.0);
        const auto r = dobrushinSum(phi, 1);
        EXPECT_EQ(r.rhoValues.size(), 4u);
        EXPECT_NEAR(r.rhoSum, 2 * std::tanh(2 * beta), 1e-13);
    }
    EXPECT_EQ(dobrushinSum(ising(0.2, 2), 1).rhoVerdict, Verdict::UniqueGibbs);
    EXPECT_EQ(dobrushinSum(ising(2.0, 2), 1).rhoVerdict, Verdict::Inconclusive);
}

TEST(Dobrushin, VarCriterion) {
    EXPECT_EQ(varCriterion(ising(0.2, 2)).varVerdict, Verdict::UniqueGibbs);
    EXPECT_NEAR(varCriterion(ising(0.2, 2)).varNorm.hi, 1.6, 1e-12);
    EXPECT_EQ(varCriterion(ising(2.0, 2)).varVerdict, Verdict::Inconclusive);
    EXPECT_EQ(varCriterion(ising(0.25, 2)).varVerdict, Verdict::Inconclusive);
}

TEST(Dobrushin, MatchesOracleOnRandomInteractions) {
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        RandomInteractionSpec spec;
        spec.shapes = 3;
        spec.maxSites = 3;
        spec.maxDiameter = 1;
        spec.amplitude = 0.6;
        const auto phi = randomInteraction(spec, rng);
        const auto dep = dependenceSet(phi, 0);
        for (int x = -1; x <= 1; ++x) {
            for (int y = -1; y <= 1; ++y) {
                if (x == 0 && y == 0) continue;
                const Point p{x, y};
                const double expected = oracle::rho(phi, p, 1);
                EXPECT_NEAR(rho(phi, p, 0), expected, 1e-12) << p.str();
                if (!dep.contains(p)) EXPECT_EQ(expected, 0.0);
            }
        }
    }
}

TEST(Dobrushin, RhoSumDominatedByVarNorm) {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        RandomInteractionSpec spec;
        spec.shapes = 4;
        spec.amplitude = 0.4;
        const auto phi = randomInteraction(spec, rng);
        const auto r = dobrushinReport(phi, 0);
        EXPECT_LE(r.rhoSum, 0.5 * r.varNorm.hi + 1e-12);
        for (const auto& [x, v] : r.rhoValues) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Dobrushin, KernelTruncationSlack) {
    const auto phi = add(ising(0.1, 1), powerLaw(1, 0.02, 3.0, 2));
    const auto r = dobrushinSum(phi, 2);
    EXPECT_GT(r.truncationNote, 0.0);
    EXPECT_EQ(r.dependenceSize, 4u);
    const auto bare = dobrushinSum(ising(0.1, 1), 1);
    EXPECT_GT(r.rhoValues.at(Point{1}), bare.rhoValues.at(Point{1}));
    EXPECT_GE(r.rhoValues.at(Point{2}), oracle::rho(phi, Point{2}, 2));
}

TEST(Dobrushin, DependenceCap) {
    EXPECT_THROW(dobrushinSum(powerLaw(2, 0.01, 5.0, 3), 3), std::length_error);
}
