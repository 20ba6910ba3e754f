#include <gtest/gtest.h>

#include <cmath>

#include "commands.hpp"
#include "config.hpp"

using namespace gibbslab;
using gibbslab::cli::Config;
using gibbslab::cli::ConfigError;

namespace {

std::string messageOf(const std::string& text) {
    try {
        Config::parse(text, "t.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(CliConfig, ParsesSectionsAndTypes) {
    const auto cfg = Config::parse(
        "# comment\n"
        "dimension = 2\n"
        "seed=7\n"
        "[interaction]\n"
        "  model = ising   # trailing comment\n"
        "  beta = 0.25\n"
        "[volume]\n"
        "sides = 3, 2\n"
        "inner = 0,0; 1,0\n",
        "t.cfg");
    EXPECT_EQ(cfg.integer("", "dimension"), 2);
    EXPECT_EQ(cfg.integer("", "seed"), 7);
    EXPECT_EQ(cfg.str("interaction", "model"), "ising");
    EXPECT_DOUBLE_EQ(cfg.number("interaction", "beta"), 0.25);
    EXPECT_EQ(cfg.integers("volume", "sides"), (std::vector<long>{3, 2}));
    EXPECT_EQ(cfg.points("volume", "inner", 2), (std::vector<Point>{{0, 0}, {1, 0}}));
    EXPECT_EQ(cfg.find("interaction", "beta")->line, 6);
    EXPECT_DOUBLE_EQ(cfg.number("", "tolerance", 1e-3), 1e-3);
}

TEST(CliConfig, RejectsUnknownKeysWithLocation) {
    const auto msg = messageOf("[interaction]\nmodel = ising\n  betta = 1\n");
    EXPECT_NE(msg.find("t.cfg:3:3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("betta"), std::string::npos) << msg;
    EXPECT_NE(messageOf("[nope]\n").find("unknown section [nope]"), std::string::npos);
    EXPECT_NE(messageOf("colour = red\n").find("unknown key 'colour'"), std::string::npos);
    EXPECT_NE(messageOf("seed = 1\nseed = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(messageOf("just words\n").find("t.cfg:1:1"), std::string::npos);
    EXPECT_NE(messageOf("[volume\n").find("unterminated"), std::string::npos);
}

TEST(CliConfig, TypeErrorsNameTheKey) {
    const auto cfg = Config::parse("[interaction]\nbeta = abc\n", "t.cfg");
    try {
        cfg.number("interaction", "beta");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("t.cfg:2:8: key 'interaction.beta'"), std::string::npos) << e.what();
    }
    EXPECT_THROW(cfg.number("interaction", "field"), ConfigError);
}

TEST(CliConfig, ParsingIsDeterministic) {
    const std::string text = "dimension = 2\n[interaction]\nmodel = random\nrandom.seed = 4\n";
    const auto a = cli::buildInteraction(Config::parse(text), "interaction", 2);
    const auto b = cli::buildInteraction(Config::parse(text), "interaction", 2);
    EXPECT_TRUE(tableEqual(a, b));
}

TEST(CliConfig, BuildsInteractions) {
    auto cfg = Config::parse("[interaction]\nmodel = ising\nbeta = 1\n");
    EXPECT_TRUE(tableEqual(cli::buildInteraction(cfg, "interaction", 2), ising(1.0, 2)));

    cfg = Config::parse("truncation_radius = 4\n[perturbation]\nmodel = power-law\nkernel.exponent = 5\n"
                        "kernel.decay_norm = 0.05\n");
    const auto psi = cli::buildInteraction(cfg, "perturbation", 2);
    ASSERT_TRUE(psi.hasKernel());
    EXPECT_EQ(psi.kernel()->truncationRadius, 4);
    EXPECT_NEAR(normDecay(psi).hi, 0.05, 1e-12);

    cfg = Config::parse("[interaction]\nmodel = ising\nbeta = 1\nscale = 0.5\n");
    EXPECT_TRUE(tableEqual(cli::buildInteraction(cfg, "interaction", 2), ising(0.5, 2), 1e-15));

    cfg = Config::parse("[interaction]\nmodel = potts\n");
    EXPECT_THROW(cli::buildInteraction(cfg, "interaction", 2), ConfigError);
}

TEST(CliConfig, BuildsVolumeAndBoundary) {
    auto cfg = Config::parse("[volume]\nsides = 4,3\n[boundary]\nkind = explicit\nbase = -1\n"
                             "deviations = -1,0:1; 4,0:1\n");
    const Rectangle box = cli::volumeBox(cfg, 2);
    EXPECT_EQ(box.volume(), 12u);
    EXPECT_EQ(box.lo, (Point{0, 0}));
    const auto bc = cli::buildBoundary(cfg, 2);
    EXPECT_EQ(bc.kind, BoundaryKind::Explicit);
    EXPECT_EQ(bc.base, -1);
    EXPECT_EQ(bc.deviations.size(), 2u);
    EXPECT_EQ(bc.spinAt(Point{-1, 0}), 1);

    cfg = Config::parse("[volume]\nradius = 1\n");
    EXPECT_EQ(cli::volumeBox(cfg, 2).volume(), 9u);
    cfg = Config::parse("[volume]\nradius = 1\nsides = 2,2\n");
    EXPECT_THROW(cli::volumeBox(cfg, 2), ConfigError);
    cfg = Config::parse("[boundary]\nkind = sideways\n");
    EXPECT_THROW(cli::buildBoundary(cfg, 2), ConfigError);
}

TEST(CliConfig, CommandsRunFromText) {
    auto cfg = Config::parse("dimension = 2\n[interaction]\nmodel = ising\nbeta = 1\n");
    auto r = cli::runCommand("norms", cfg);
    ASSERT_EQ(r.table.rows.size(), 4u);
    EXPECT_EQ(std::get<double>(r.table.rows[3][2]), 8.0);

    cfg = Config::parse("[interaction]\nmodel = ising\nbeta = 0.2\n[dobrushin]\nexpect = unique\n");
    EXPECT_EQ(cli::runCommand("dobrushin", cfg).exitCode, cli::kExitPass);
    cfg = Config::parse("[interaction]\nmodel = ising\nbeta = 2\n[dobrushin]\nexpect = unique\n");
    EXPECT_EQ(cli::runCommand("dobrushin", cfg).exitCode, cli::kExitFail);

    cfg = Config::parse("[census]\nn_max = 8\n");
    r = cli::runCommand("contour-census", cfg);
    EXPECT_EQ(r.table.rows.size(), 3u);
    EXPECT_EQ(r.exitCode, cli::kExitPass);
    EXPECT_THROW(cli::runCommand("bogus", cfg), std::invalid_argument);
}
