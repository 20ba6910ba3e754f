#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gibbslab/contour.hpp"
#include "gibbslab/dobrushin.hpp"
#include "gibbslab/generators.hpp"
#include "gibbslab/gibbs.hpp"
#include "gibbslab/montecarlo.hpp"
#include "gibbslab/thermo.hpp"

namespace gibbslab::cli {

namespace {

using Handler = std::function<CommandResult(const Config&)>;

std::uint64_t seedOf(const Config& cfg) { return static_cast<std::uint64_t>(cfg.integer("", "seed", 1)); }

double toleranceOf(const Config& cfg, double fallback) { return cfg.number("", "tolerance", fallback); }

EnumerationOptions enumerationOf(const Config& cfg) { return {cfg.boolean("", "allow_large_volume", false)}; }

std::string describeInteraction(const Config& cfg, const std::string& section) {
    if (!cfg.hasSection(section)) return "none";
    if (cfg.has(section, "file")) return "file:" + cfg.str(section, "file");
    std::string s = cfg.str(section, "model", "zero");
    if (cfg.has(section, "kernel.exponent") && s != "power-law") s += "+power-law";
    return s;
}

SiteSet volumeSites(const Config& cfg, int dim) { return SiteSet::fromRectangle(volumeBox(cfg, dim)); }

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

void addCommonMeta(ReportTable& t, const Config& cfg, int dim) {
    t.addMeta("dimension", std::int64_t{dim});
    t.addMeta("truncationRadius", std::int64_t{truncationRadiusOf(cfg)});
}

// ---------------------------------------------------------------- norms

CommandResult cmdNorms(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const double tol = toleranceOf(cfg, 1e-9);
    CommandResult r;
    r.table.kind = "norms";
    r.table.addMeta("dimension", std::int64_t{dim})
        .addMeta("interaction", describeInteraction(cfg, "interaction"))
        .addMeta("relativeTolerance", tol)
        .addMeta("discardedKernelTail", phi.discardedKernelTail());
    r.table.columns = {"norm", "lower", "upper"};
    const std::vector<std::pair<std::string, Interval (*)(const Interaction&, double)>> norms{
        {"abs", &normAbs}, {"decay", &normDecay}, {"decayPrime", &normDecayPrime}, {"var", &normVar}};
    for (const auto& [name, fn] : norms) {
        try {
            const Interval v = fn(phi, tol);
            r.table.addRow({name, v.lo, v.hi});
            r.summary.push_back(name + " in [" + formatDouble(v.lo) + ", " + formatDouble(v.hi) + "]");
        } catch (const std::domain_error&) {
            const double inf = std::numeric_limits<double>::infinity();
            r.table.addRow({name, inf, inf});
            r.summary.push_back(name + " diverges");
        }
    }
    return r;
}

// ------------------------------------------------------------ dobrushin

CommandResult cmdDobrushin(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const int R = truncationRadiusOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const double tol = toleranceOf(cfg, 1e-9);
    DobrushinReport rep = varCriterion(phi, tol);
    std::string rhoVerdict = "not-computed";
    std::string note;
    try {
        const DobrushinReport rho = dobrushinSum(phi, R);
        rep.rhoValues = rho.rhoValues;
        rep.rhoSum = rho.rhoSum;
        rep.rhoVerdict = rho.rhoVerdict;
        rep.truncationNote = rho.truncationNote;
        rep.truncationRadius = rho.truncationRadius;
        rep.dependenceSize = rho.dependenceSize;
        rhoVerdict = toString(rho.rhoVerdict);
    } catch (const std::length_error& e) {
        note = e.what();
    }
    const std::string varVerdict = toString(rep.varVerdict);

    CommandResult r;
    r.table.kind = "dobrushin";
    addCommonMeta(r.table, cfg, dim);
    r.table.addMeta("interaction", describeInteraction(cfg, "interaction"))
        .addMeta("rhoSum", rep.rhoSum)
        .addMeta("rhoVerdict", rhoVerdict)
        .addMeta("varNormLower", rep.varNorm.lo)
        .addMeta("varNormUpper", rep.varNorm.hi)
        .addMeta("varVerdict", varVerdict)
        .addMeta("truncationSlack", rep.truncationNote)
        .addMeta("dependenceSize", static_cast<std::int64_t>(rep.dependenceSize));
    if (!note.empty()) r.table.addMeta("note", note);
    r.table.columns = {"site", "rho"};
    for (const auto& [x, v] : rep.rhoValues) r.table.addRow({x.str(), v});

    std::ostringstream line;
    r.summary.push_back("criterion   value                 verdict");
    line << "rho-sum     " << formatDouble(rep.rhoSum) << "    " << rhoVerdict;
    r.summary.push_back(line.str());
    line.str("");
    line << "var-norm    " << formatDouble(rep.varNorm.hi) << "    " << varVerdict;
    r.summary.push_back(line.str());

    const std::string expect = cfg.str("dobrushin", "expect", "none");
    const bool unique = rep.rhoVerdict == Verdict::UniqueGibbs || rep.varVerdict == Verdict::UniqueGibbs;
    if (expect == "unique") {
        r.exitCode = unique ? kExitPass : kExitFail;
    } else if (expect == "inconclusive") {
        r.exitCode = unique ? kExitFail : kExitPass;
    } else if (expect != "none") {
        throw cfg.error("dobrushin", "expect", "expected unique, inconclusive or none");
    }
    return r;
}

// ---------------------------------------------------------------- gibbs

CommandResult cmdGibbsExact(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const auto mu =
        buildGibbs(phi, volumeSites(cfg, dim), buildBoundary(cfg, dim), truncationRadiusOf(cfg), enumerationOf(cfg));
    CommandResult r;
    r.table = gibbsTable(mu);
    r.summary.push_back("log Z = " + formatDouble(mu.logZ) + " over " + std::to_string(mu.logWeights.size()) +
                        " configurations");
    return r;
}

CommandResult checkRow(const std::string& kind, const Config& cfg, int dim, double value, double tol) {
    CommandResult r;
    r.table.kind = kind;
    addCommonMeta(r.table, cfg, dim);
    r.table.columns = {"deviation", "tolerance", "pass"};
    const bool ok = value <= tol;
    r.table.addRow({value, tol, ok});
    r.exitCode = ok ? kExitPass : kExitFail;
    r.summary.push_back(kind + ": deviation " + formatDouble(value) + " vs tolerance " + formatDouble(tol) + " " +
                        pass(ok));
    return r;
}

CommandResult cmdDlrCheck(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const SiteSet vol = volumeSites(cfg, dim);
    const SiteSet inner(cfg.points("volume", "inner", dim));
    const auto bc = buildBoundary(cfg, dim);
    const double res = dlrCheck(phi, vol, inner, bc, truncationRadiusOf(cfg));
    auto r = checkRow("dlr-check", cfg, dim, res, toleranceOf(cfg, 1e-10));
    r.table.addMeta("boundary", bc.describe()).addMeta("volume", vol.str()).addMeta("inner", inner.str());
    return r;
}

CommandResult cmdRectEquiv(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const Interaction phi0 = buildInteraction(cfg, "interaction", dim);
    if (!cfg.hasSection("perturbation")) throw ConfigError(cfg.origin() + ": section [perturbation] is required");
    const Interaction psi = buildInteraction(cfg, "perturbation", dim);
    const SiteSet vol = volumeSites(cfg, dim);
    const auto bc = buildBoundary(cfg, dim);
    const double dev = gibbsEquivalenceCheck(phi0, psi, vol, bc, truncationRadiusOf(cfg));
    auto r = checkRow("rect-equiv", cfg, dim, dev, toleranceOf(cfg, 1e-10));
    r.table.addMeta("boundary", bc.describe()).addMeta("volume", vol.str());
    return r;
}

// ------------------------------------------------------------- contours

std::string joinContours(const std::vector<Contour>& cs) {
    std::string s;
    for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? " | " : "") + cs[i].interior.str();
    return s;
}

CommandResult cmdPeierls(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const int R = truncationRadiusOf(cfg);
    const Interaction psi =
        cfg.hasSection("perturbation") ? buildInteraction(cfg, "perturbation", dim) : zeroInteraction(dim);
    const double beta = cfg.number("peierls", "beta", 1.0);
    const double delta = cfg.number("peierls", "delta", 0.0);
    const SiteSet vol = volumeSites(cfg, dim);
    const std::string events = cfg.str("peierls", "events", "listed");

    std::vector<PeierlsReport> reports;
    if (events == "all") {
        if (cfg.has("peierls", "contours")) {
            throw cfg.error("peierls", "contours", "cannot be combined with events = all");
        }
        reports = peierlsSweep(beta, psi, delta, vol, R);
    } else if (events == "listed") {
        std::vector<Contour> contours;
        std::istringstream groups(cfg.str("peierls", "contours"));
        std::string group;
        while (std::getline(groups, group, '|')) {
            std::vector<Point> pts;
            std::istringstream sites(group);
            std::string site;
            while (std::getline(sites, site, ';')) {
                if (site.find_first_not_of(" \t") == std::string::npos) continue;
                try {
                    pts.push_back(parsePoint(site, dim));
                } catch (const std::invalid_argument& e) {
                    throw cfg.error("peierls", "contours", e.what());
                }
            }
            if (pts.empty()) throw cfg.error("peierls", "contours", "empty contour interior");
            contours.push_back(contourOf(SiteSet(pts)));
        }
        reports.push_back(peierlsVerify(beta, psi, delta, vol, contours, R));
    } else {
        throw cfg.error("peierls", "events", "expected listed or all");
    }

    CommandResult r;
    r.table.kind = "peierls-verify";
    addCommonMeta(r.table, cfg, dim);
    r.table.addMeta("beta", beta)
        .addMeta("delta", delta)
        .addMeta("perturbation", describeInteraction(cfg, "perturbation"))
        .addMeta("volume", vol.str())
        .addMeta("tailBound", reports.empty() ? 0.0 : reports.front().tailBound);
    r.table.columns = {"contours", "totalSize", "lhs", "rhs", "margin", "pass"};
    std::size_t failed = 0;
    for (const auto& rep : reports) {
        std::size_t total = 0;
        for (const auto& g : rep.contours) total += g.size();
        r.table.addRow({joinContours(rep.contours), static_cast<std::int64_t>(total), rep.lhs, rep.rhs,
                        rep.rhs - rep.lhs, rep.pass});
        if (!rep.pass) ++failed;
    }
    r.exitCode = failed ? kExitFail : kExitPass;
    r.summary.push_back(std::to_string(reports.size()) + " event(s) checked, " + std::to_string(failed) + " failed");
    return r;
}

CommandResult cmdCensus(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const int nMax = static_cast<int>(cfg.integer("census", "n_max", 12));
    const auto rows = contourCensus(dim, nMax);
    CommandResult r;
    r.table.kind = "contour-census";
    r.table.addMeta("dimension", std::int64_t{dim})
        .addMeta("nMax", std::int64_t{nMax})
        .addMeta("Cd", std::int64_t{computeCd(dim)});
    r.table.columns = {"n", "count", "bound", "ratio"};
    bool ok = true;
    for (const auto& row : rows) {
        r.table.addRow({std::int64_t{row.n}, static_cast<std::int64_t>(row.count), row.bound, row.ratio});
        ok = ok && row.ratio <= 1.0;
    }
    r.exitCode = ok ? kExitPass : kExitFail;
    r.summary.push_back("census up to n = " + std::to_string(nMax) + ": " + pass(ok));
    return r;
}

CommandResult cmdEpsilon(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const double step = cfg.number("epsilon", "step", 0.01);
    const double lMax = cfg.number("epsilon", "l_max", 5.0);
    const auto rows = epsilonScan(dim, step, lMax);
    const double threshold = epsilonThreshold(dim, step);
    CommandResult r;
    r.table.kind = "epsilon-scan";
    r.table.addMeta("dimension", std::int64_t{dim})
        .addMeta("Cd", std::int64_t{computeCd(dim)})
        .addMeta("step", step)
        .addMeta("threshold", threshold);
    r.table.columns = {"L", "epsilon"};
    for (const auto& row : rows) r.table.addRow({row.L, row.epsilon});
    r.summary.push_back("smallest grid L with epsilon < 1/2: " + formatDouble(threshold));
    return r;
}

// --------------------------------------------------------------- thermo

CommandResult cmdPressure(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const int R = truncationRadiusOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const bool lipschitz = cfg.hasSection("perturbation");
    const Interaction psi = lipschitz ? buildInteraction(cfg, "perturbation", dim) : zeroInteraction(dim);
    const long nMin = cfg.integer("pressure", "n_min", 0);
    const long nMax = cfg.integer("pressure", "n_max", 1);
    if (nMin < 0 || nMax < nMin) throw cfg.error("pressure", "n_max", "need 0 <= n_min <= n_max");
    const auto opts = enumerationOf(cfg);

    CommandResult r;
    r.table.kind = "pressure-scan";
    addCommonMeta(r.table, cfg, dim);
    r.table.addMeta("interaction", describeInteraction(cfg, "interaction")).addMeta("boundary", std::string("free"));
    r.table.columns = {"n", "sites", "perSiteLogZ", "tailBound"};
    if (lipschitz) {
        r.table.addMeta("perturbation", describeInteraction(cfg, "perturbation"));
        r.table.columns.insert(r.table.columns.end(), {"lipschitzDelta", "lipschitzBound", "lipschitzPass"});
    }
    bool ok = true;
    for (long n = nMin; n <= nMax; ++n) {
        const auto p = pressureEstimate(phi, static_cast<int>(n), R, opts);
        std::vector<Cell> row{std::int64_t{n}, static_cast<std::int64_t>(p.sites), p.perSiteLogZ, p.tailBoundPerSite};
        if (lipschitz) {
            const auto l = pressureLipschitzCheck(phi, psi, static_cast<int>(n), R, opts);
            row.insert(row.end(), {l.delta, l.bound, l.pass});
            ok = ok && l.pass;
        }
        r.table.addRow(std::move(row));
    }
    r.exitCode = ok ? kExitPass : kExitFail;
    r.summary.push_back(std::to_string(nMax - nMin + 1) + " volume(s)" + (lipschitz ? ", Lipschitz " + pass(ok) : ""));
    return r;
}

CommandResult cmdVariational(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const int R = truncationRadiusOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    const int n = static_cast<int>(cfg.integer("variational", "n", 1));
    const double pMin = cfg.number("variational", "p_min", 0.05);
    const double pMax = cfg.number("variational", "p_max", 0.95);
    const double pStep = cfg.number("variational", "p_step", 0.05);
    if (!(pStep > 0.0) || pMin < 0.0 || pMax > 1.0 || pMax < pMin) {
        throw cfg.error("variational", "p_step", "need 0 <= p_min <= p_max <= 1 and p_step > 0");
    }
    CommandResult r;
    r.table.kind = "variational";
    addCommonMeta(r.table, cfg, dim);
    r.table.addMeta("interaction", describeInteraction(cfg, "interaction")).addMeta("n", std::int64_t{n});
    r.table.columns = {"p", "F", "Pn", "gap", "slack"};
    const long steps = std::lround(std::floor((pMax - pMin) / pStep + 1e-9));
    double best = -std::numeric_limits<double>::infinity();
    double bestP = pMin;
    for (long k = 0; k <= steps; ++k) {
        const double p = pMin + static_cast<double>(k) * pStep;
        const auto v = variationalGap(phi, ProductMeasure(p), n, R, enumerationOf(cfg));
        r.table.addRow({p, v.F, v.Pn, v.gap(), v.slack});
        if (v.F > best) {
            best = v.F;
            bestP = p;
        }
    }
    r.summary.push_back("largest F = " + formatDouble(best) + " at p = " + formatDouble(bestP));
    return r;
}

// ----------------------------------------------------------- montecarlo

CommandResult cmdMagnetization(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    const Interaction phi = buildInteraction(cfg, "interaction", dim);
    ChainConfig chain;
    chain.interactionId = describeInteraction(cfg, "interaction");
    chain.volume = volumeBox(cfg, dim);
    chain.boundary = buildBoundary(cfg, dim);
    chain.truncationRadius = truncationRadiusOf(cfg);
    chain.seed = seedOf(cfg);
    chain.sweeps = cfg.integer("chain", "sweeps", 1000);
    chain.burnIn = cfg.integer("chain", "burn_in", 100);
    chain.thinning = cfg.integer("chain", "thinning", 1);
    try {
        chain.init = initialStateFromString(cfg.str("chain", "init", "boundary"));
    } catch (const std::invalid_argument& e) {
        throw cfg.error("chain", "init", e.what());
    }
    if (cfg.has("chain", "initial_spins")) {
        for (long s : cfg.integers("chain", "initial_spins")) {
            if (s != 1 && s != -1) throw cfg.error("chain", "initial_spins", "spins must be 1 or -1");
            chain.initialSpins.push_back(static_cast<Spin>(s));
        }
    }
    Point site(dim);
    for (int i = 0; i < dim; ++i) site[i] = chain.volume.lo[i] + (chain.volume.side(i) - 1) / 2;
    if (cfg.has("chain", "site")) site = cfg.points("chain", "site", dim).at(0);

    std::vector<TrajectoryRow> trajectory;
    const bool wantTrajectory = cfg.has("chain", "trajectory");
    const auto est = magnetization(phi, chain, site, wantTrajectory ? &trajectory : nullptr);

    if (wantTrajectory) {
        std::filesystem::path path(cfg.str("chain", "trajectory"));
        if (path.is_relative()) path = std::filesystem::path(cfg.baseDir()) / path;
        ReportTable t;
        t.kind = "trajectory";
        t.addMeta("seed", static_cast<std::int64_t>(chain.seed)).addMeta("rng", std::string(Rng::kAlgorithm));
        t.columns = {"sweep", "energyPerSite", "magnetization"};
        for (const auto& row : trajectory) {
            t.addRow({static_cast<std::int64_t>(row.sweep), row.energyPerSite, row.magnetization});
        }
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write trajectory file '" + path.string() + "'");
        writeCsv(out, t);
    }

    CommandResult r;
    r.table.kind = "mc-magnetization";
    r.table.addMeta("dimension", std::int64_t{dim})
        .addMeta("interactionId", chain.interactionId)
        .addMeta("volumeLo", chain.volume.lo.str())
        .addMeta("volumeHi", chain.volume.hi.str())
        .addMeta("boundary", chain.boundary.describe())
        .addMeta("truncationRadius", std::int64_t{chain.truncationRadius})
        .addMeta("seed", static_cast<std::int64_t>(chain.seed))
        .addMeta("sweeps", static_cast<std::int64_t>(chain.sweeps))
        .addMeta("burnIn", static_cast<std::int64_t>(chain.burnIn))
        .addMeta("thinning", static_cast<std::int64_t>(chain.thinning))
        .addMeta("init", toString(chain.init))
        .addMeta("rng", std::string(Rng::kAlgorithm));
    r.table.columns = {"site", "mean", "standardError", "samples", "batches"};
    r.table.addRow({est.site.str(), est.mean, est.standardError, static_cast<std::int64_t>(est.samples),
                    std::int64_t{est.batches}});
    r.summary.push_back("m" + est.site.str() + " = " + formatDouble(est.mean) + " +- " +
                        formatDouble(est.standardError));
    return r;
}

CommandResult cmdCoexistence(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    Interaction phi = buildInteraction(cfg, "interaction", dim);
    if (cfg.hasSection("perturbation")) phi = add(phi, buildInteraction(cfg, "perturbation", dim));
    CoexistenceSettings s;
    s.side = static_cast<int>(cfg.integer("coexistence", "side", 16));
    s.truncationRadius = truncationRadiusOf(cfg);
    if (cfg.has("coexistence", "seeds")) {
        s.seeds.clear();
        for (long v : cfg.integers("coexistence", "seeds")) s.seeds.push_back(static_cast<std::uint64_t>(v));
    } else {
        s.seeds = {seedOf(cfg)};
    }
    s.sweeps = cfg.integer("coexistence", "sweeps", s.sweeps);
    s.burnIn = cfg.integer("coexistence", "burn_in", s.burnIn);
    s.thinning = cfg.integer("coexistence", "thinning", s.thinning);
    if (cfg.has("coexistence", "init")) {
        try {
            s.init = initialStateFromString(cfg.str("coexistence", "init"));
        } catch (const std::invalid_argument& e) {
            throw cfg.error("coexistence", "init", e.what());
        }
    }
    const auto rep = coexistenceIndicator(phi, s);

    CommandResult r;
    r.table.kind = "coexistence";
    addCommonMeta(r.table, cfg, dim);
    std::string seeds;
    for (std::size_t i = 0; i < s.seeds.size(); ++i) seeds += (i ? "," : "") + std::to_string(s.seeds[i]);
    r.table.addMeta("interaction", describeInteraction(cfg, "interaction"))
        .addMeta("perturbation", describeInteraction(cfg, "perturbation"))
        .addMeta("side", std::int64_t{s.side})
        .addMeta("seeds", seeds)
        .addMeta("sweeps", static_cast<std::int64_t>(s.sweeps))
        .addMeta("burnIn", static_cast<std::int64_t>(s.burnIn))
        .addMeta("thinning", static_cast<std::int64_t>(s.thinning))
        .addMeta("init", toString(s.init))
        .addMeta("rng", std::string(Rng::kAlgorithm));
    r.table.columns = {"site", "mPlus", "mMinus", "gap", "sePlus", "seMinus", "seGap", "symmetric", "warning"};
    r.table.addRow({rep.site.str(), rep.mPlus, rep.mMinus, rep.gap, rep.sePlus, rep.seMinus, rep.seGap,
                    rep.symmetric, rep.warning});

    const std::string expect = cfg.str("coexistence", "expect", "none");
    bool ok = true;
    if (expect == "coexistence") {
        ok = rep.gap > cfg.number("coexistence", "gap_min", 1.5);
    } else if (expect == "uniqueness") {
        ok = std::fabs(rep.gap) <= 3.0 * rep.seGap;
    } else if (expect == "positive") {
        ok = rep.mPlus > 0.0 && rep.mMinus > 0.0;
    } else if (expect != "none") {
        throw cfg.error("coexistence", "expect", "expected coexistence, uniqueness, positive or none");
    }
    r.exitCode = ok ? kExitPass : kExitFail;
    r.summary.push_back("m+ = " + formatDouble(rep.mPlus) + ", m- = " + formatDouble(rep.mMinus) +
                        ", gap = " + formatDouble(rep.gap) + " +- " + formatDouble(rep.seGap));
    if (!rep.warning.empty()) r.summary.push_back("warning: " + rep.warning);
    if (expect != "none") r.summary.push_back("expect " + expect + ": " + pass(ok));
    return r;
}

CommandResult cmdExport(const Config& cfg) {
    const int dim = dimensionOf(cfg);
    CommandResult r;
    r.raw = interactionToJson(buildInteraction(cfg, "interaction", dim));
    r.hasRaw = true;
    return r;
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h{
        {"norms", cmdNorms},
        {"dobrushin", cmdDobrushin},
        {"gibbs-exact", cmdGibbsExact},
        {"dlr-check", cmdDlrCheck},
        {"rect-equiv", cmdRectEquiv},
        {"peierls-verify", cmdPeierls},
        {"contour-census", cmdCensus},
        {"epsilon-scan", cmdEpsilon},
        {"pressure-scan", cmdPressure},
        {"variational", cmdVariational},
        {"mc-magnetization", cmdMagnetization},
        {"coexistence", cmdCoexistence},
        {"export-interaction", cmdExport},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& commandNames() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

CommandResult runCommand(const std::string& name, const Config& cfg) {
    const auto it = handlers().find(name);
    if (it == handlers().end()) throw std::invalid_argument("unknown subcommand '" + name + "'");
    return it->second(cfg);
}

int dimensionOf(const Config& cfg) {
    const long d = cfg.integer("", "dimension", 2);
    if (d < 1 || d > 4) throw cfg.error("", "dimension", "must be between 1 and 4");
    return static_cast<int>(d);
}

int truncationRadiusOf(const Config& cfg) {
    const long r = cfg.integer("", "truncation_radius", 1);
    if (r < 0) throw cfg.error("", "truncation_radius", "must be nonnegative");
    return static_cast<int>(r);
}

Interaction buildInteraction(const Config& cfg, const std::string& section, int dim) {
    const auto fail = [&](const std::string& key, const std::string& what) { return cfg.error(section, key, what); };
    const auto num = [&](const std::string& key) { return cfg.number(section, key); };
    if (!cfg.hasSection(section)) throw ConfigError(cfg.origin() + ": section [" + section + "] is required");

    Interaction phi(dim);
    std::string model = "zero";
    if (cfg.has(section, "file")) {
        if (cfg.has(section, "model")) throw fail("model", "cannot be combined with file");
        std::filesystem::path path(cfg.str(section, "file"));
        if (path.is_relative()) path = std::filesystem::path(cfg.baseDir()) / path;
        phi = loadInteraction(path.string());
        if (phi.dim() != dim) throw fail("file", "interaction dimension differs from the configured dimension");
        model = "file";
    } else {
        model = cfg.str(section, "model", "zero");
        try {
            if (model == "zero") {
                phi = zeroInteraction(dim);
            } else if (model == "ising") {
                phi = ising(num("beta"), dim);
            } else if (model == "ising-field") {
                phi = isingWithField(num("beta"), num("field"), dim);
            } else if (model == "power-law") {
                if (!cfg.has(section, "kernel.exponent")) throw fail("model", "power-law needs kernel.exponent");
                phi = zeroInteraction(dim);
            } else if (model == "random") {
                RandomInteractionSpec spec;
                spec.dim = dim;
                spec.shapes = static_cast<int>(cfg.integer(section, "random.shapes", spec.shapes));
                spec.maxSites = static_cast<int>(cfg.integer(section, "random.max_sites", spec.maxSites));
                spec.maxDiameter = static_cast<int>(cfg.integer(section, "random.max_diameter", spec.maxDiameter));
                spec.amplitude = cfg.number(section, "random.amplitude", spec.amplitude);
                spec.flipSymmetric = cfg.boolean(section, "random.flip_symmetric", false);
                spec.l1Connected = cfg.boolean(section, "random.l1_connected", false);
                spec.targetNormAbs = cfg.number(section, "random.norm_abs", -1.0);
                Rng rng(static_cast<std::uint64_t>(cfg.integer(section, "random.seed", cfg.integer("", "seed", 1))));
                phi = randomInteraction(spec, rng);
            } else {
                throw fail("model", "unknown model '" + model + "' (expected zero, ising, ising-field, power-law, random)");
            }
        } catch (const std::invalid_argument& e) {
            throw fail("model", e.what());
        }
    }

    if (cfg.has(section, "kernel.exponent")) {
        const double s = num("kernel.exponent");
        const int radius = static_cast<int>(cfg.integer(section, "kernel.radius", truncationRadiusOf(cfg)));
        KernelNorm norm = KernelNorm::Inf;
        try {
            norm = kernelNormFromString(cfg.str(section, "kernel.norm", "inf"));
        } catch (const std::invalid_argument& e) {
            throw fail("kernel.norm", e.what());
        }
        double amplitude = 0.0;
        if (cfg.has(section, "kernel.decay_norm")) {
            if (cfg.has(section, "kernel.amplitude")) throw fail("kernel.decay_norm", "conflicts with kernel.amplitude");
            const double unit = normDecay(powerLaw(dim, 1.0, s, radius, norm)).hi;
            amplitude = num("kernel.decay_norm") / unit;
        } else {
            amplitude = num("kernel.amplitude");
        }
        try {
            phi = add(phi, powerLaw(dim, amplitude, s, radius, norm));
        } catch (const std::invalid_argument& e) {
            throw fail("kernel.exponent", e.what());
        }
    }
    if (cfg.has(section, "scale")) phi = scale(phi, num("scale"));
    if (cfg.boolean(section, "materialize", false)) phi = materializeKernel(phi);
    return phi;
}

Rectangle volumeBox(const Config& cfg, int dim) {
    if (cfg.has("volume", "sides") == cfg.has("volume", "radius")) {
        throw ConfigError(cfg.origin() + ": section [volume] needs exactly one of sides or radius");
    }
    if (cfg.has("volume", "radius")) {
        const long n = cfg.integer("volume", "radius");
        if (n < 0) throw cfg.error("volume", "radius", "must be nonnegative");
        return centeredBox(dim, static_cast<int>(n));
    }
    const auto sides = cfg.integers("volume", "sides");
    if (static_cast<int>(sides.size()) != dim) {
        throw cfg.error("volume", "sides", "needs " + std::to_string(dim) + " entries");
    }
    std::vector<int> s;
    for (long v : sides) {
        if (v < 1) throw cfg.error("volume", "sides", "sides must be positive");
        s.push_back(static_cast<int>(v));
    }
    return boxFromOrigin(s);
}

BoundaryCondition buildBoundary(const Config& cfg, int dim) {
    const std::string kind = cfg.str("boundary", "kind", "plus");
    if (kind == "plus") return BoundaryCondition::plus();
    if (kind == "minus") return BoundaryCondition::minus();
    if (kind == "free") return BoundaryCondition::free();
    if (kind != "explicit") throw cfg.error("boundary", "kind", "expected plus, minus, free or explicit");
    const long base = cfg.integer("boundary", "base", 1);
    if (base != 1 && base != -1) throw cfg.error("boundary", "base", "must be 1 or -1");
    std::map<Point, Spin> dev;
    if (cfg.has("boundary", "deviations")) {
        std::istringstream in(cfg.str("boundary", "deviations"));
        std::string item;
        while (std::getline(in, item, ';')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw cfg.error("boundary", "deviations", "expected x,y:spin entries");
            try {
                const Point p = parsePoint(item.substr(0, colon), dim);
                const int s = std::stoi(item.substr(colon + 1));
                if (s != 1 && s != -1) throw std::invalid_argument("spin must be 1 or -1");
                dev[p] = static_cast<Spin>(s);
            } catch (const std::exception& e) {
                throw cfg.error("boundary", "deviations", e.what());
            }
        }
    }
    return BoundaryCondition::explicitSpins(static_cast<Spin>(base), dev);
}

}  // namespace gibbslab::cli
