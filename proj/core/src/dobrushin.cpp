#include "gibbslab/dobrushin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/parallel.hpp"

namespace gibbslab {

std::string toString(Verdict v) { return v == Verdict::UniqueGibbs ? "UniqueGibbs" : "Inconclusive"; }

namespace {

/// Terms containing the origin, with their sites mapped into the
/// dependence set. Position -1 stands for the origin.
struct OriginTerms {
    SiteSet deps;
    struct Term {
        std::vector<int> pos;
        std::vector<double> table;
    };
    std::vector<Term> terms;
    double kernelTail = 0.0;
};

OriginTerms collectTerms(const Interaction& phi, int radius) {
    OriginTerms out;
    const Point origin(phi.dim());
    std::vector<TermInstance> raw;
    std::vector<Point> sites;
    forEachTerm(phi, SiteSet{origin}, radius, Scope::Meets, [&](const TermInstance& t) {
        raw.push_back(t);
        for (const Point& p : t.sites) {
            if (p != origin) sites.push_back(p);
        }
    });
    out.deps = SiteSet(std::move(sites));
    if (out.deps.size() > kDependenceCap) {
        throw std::length_error("dependence set of " + std::to_string(out.deps.size()) +
                                " sites exceeds the enumeration cap " + std::to_string(kDependenceCap) +
                                "; use the var-norm criterion for a large-range bound");
    }
    for (const TermInstance& t : raw) {
        OriginTerms::Term term;
        for (const Point& p : t.sites) {
            term.pos.push_back(p == origin ? -1 : static_cast<int>(out.deps.indexOf(p)));
        }
        term.table.resize(std::size_t{1} << t.sites.size());
        for (ConfigCode c = 0; c < term.table.size(); ++c) term.table[c] = t.value(c);
        out.terms.push_back(std::move(term));
    }
    if (phi.hasKernel()) out.kernelTail = kernelTailBound(*phi.kernel(), phi.dim(), std::max(radius, 0));
    return out;
}

/// P(w(0) = +1 | pattern) for every pattern on the dependence set.
std::vector<double> conditionalTable(const OriginTerms& ot) {
    const std::size_t count = std::size_t{1} << ot.deps.size();
    std::vector<double> pPlus(count);
    parallelChunks(count, 64, [&](std::size_t, std::size_t b, std::size_t e) {
        for (ConfigCode eta = b; eta < e; ++eta) {
            double ePlus = 0.0;
            double eMinus = 0.0;
            for (const auto& t : ot.terms) {
                ConfigCode idx = 0;
                ConfigCode originBit = 0;
                for (std::size_t k = 0; k < t.pos.size(); ++k) {
                    if (t.pos[k] < 0) {
                        originBit = ConfigCode{1} << k;
                    } else {
                        idx |= ((eta >> t.pos[k]) & 1u) << k;
                    }
                }
                ePlus += t.table[idx];
                eMinus += t.table[idx | originBit];
            }
            pPlus[eta] = 1.0 / (1.0 + std::exp(ePlus - eMinus));
        }
    });
    return pPlus;
}

double maxFlipGap(const std::vector<double>& pPlus, std::size_t bit) {
    const ConfigCode mask = ConfigCode{1} << bit;
    double m = 0.0;
    for (ConfigCode eta = 0; eta < pPlus.size(); ++eta) {
        if (eta & mask) continue;
        m = std::max(m, std::fabs(pPlus[eta] - pPlus[eta | mask]));
    }
    return m;
}

}  // namespace

SiteSet dependenceSet(const Interaction& phi, int truncationRadius) {
    return collectTerms(phi, truncationRadius).deps;
}

double rho(const Interaction& phi, const Point& x, int truncationRadius) {
    if (x.dim() != phi.dim()) throw std::invalid_argument("rho: dimension mismatch");
    if (x.isZero()) throw std::invalid_argument("rho: x must differ from the origin");
    const OriginTerms ot = collectTerms(phi, truncationRadius);
    const auto idx = ot.deps.indexOf(x);
    if (idx < 0) {
        // a pair beyond the radius moves the field by at most 4|J(x)|
        if (phi.hasKernel() && normInf(x) > truncationRadius) return std::min(1.0, std::fabs(phi.kernel()->coupling(x)));
        return 0.0;
    }
    const double r = maxFlipGap(conditionalTable(ot), static_cast<std::size_t>(idx));
    return std::min(1.0, r + ot.kernelTail);
}

DobrushinReport dobrushinSum(const Interaction& phi, int truncationRadius) {
    const OriginTerms ot = collectTerms(phi, truncationRadius);
    const auto pPlus = conditionalTable(ot);
    DobrushinReport rep;
    rep.truncationRadius = truncationRadius;
    rep.dependenceSize = ot.deps.size();
    for (std::size_t k = 0; k < ot.deps.size(); ++k) {
        const double r = std::min(1.0, maxFlipGap(pPlus, k) + ot.kernelTail);
        if (r > 0.0) rep.rhoValues[ot.deps[k]] = r;
        rep.rhoSum += r;
    }
    if (phi.hasKernel()) {
        const double beyond = 2.0 * ot.kernelTail;
        rep.truncationNote = beyond + static_cast<double>(ot.deps.size()) * ot.kernelTail;
        rep.rhoSum += beyond;
    }
    rep.rhoVerdict = rep.rhoSum < 1.0 ? Verdict::UniqueGibbs : Verdict::Inconclusive;
    return rep;
}

DobrushinReport varCriterion(const Interaction& phi, double relTol) {
    DobrushinReport rep;
    rep.varNorm = normVar(phi, relTol);
    rep.varVerdict = rep.varNorm.hi < 2.0 ? Verdict::UniqueGibbs : Verdict::Inconclusive;
    return rep;
}

DobrushinReport dobrushinReport(const Interaction& phi, int truncationRadius, double relTol) {
    DobrushinReport rep = dobrushinSum(phi, truncationRadius);
    const DobrushinReport var = varCriterion(phi, relTol);
    rep.varNorm = var.varNorm;
    rep.varVerdict = var.varVerdict;
    return rep;
}

}  // namespace gibbslab
