#include "gibbslab/thermo.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gibbslab {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

ProductMeasure::ProductMeasure(double prob) : p(prob) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ProductMeasure: p must lie in [0, 1]");
}

double entropyRate(const ProductMeasure& mu) { return -xlogx(mu.p) - xlogx(1.0 - mu.p); }

double entropyEstimate(const Distribution& dist) {
    if (dist.sites.empty()) throw std::invalid_argument("entropyEstimate: empty site set");
    double h = 0.0;
    for (double q : dist.probs) h -= xlogx(q);
    return h / static_cast<double>(dist.sites.size());
}

Distribution productMarginal(const ProductMeasure& mu, const SiteSet& sites) {
    if (sites.size() > kHardEnumerationCap) throw std::length_error("productMarginal: too many sites");
    Distribution d{sites, std::vector<double>(std::size_t{1} << sites.size())};
    for (ConfigCode c = 0; c < d.probs.size(); ++c) {
        const int minus = std::popcount(c);
        d.probs[c] = std::pow(mu.p, static_cast<double>(sites.size()) - minus) * std::pow(1.0 - mu.p, minus);
    }
    return d;
}

PressureReport pressureEstimate(const Interaction& phi, int n, int truncationRadius, EnumerationOptions opts) {
    if (n < 0) throw std::invalid_argument("pressureEstimate: n must be nonnegative");
    const SiteSet box = SiteSet::fromRectangle(centeredBox(phi.dim(), n));
    const LogPartition lz = logPartitionFunction(phi, box, BoundaryCondition::free(), truncationRadius, opts);
    PressureReport r;
    r.n = n;
    r.sites = box.size();
    r.logZ = lz.logZ;
    r.perSiteLogZ = lz.logZ / static_cast<double>(box.size());
    r.tailBoundPerSite = lz.tailBound / static_cast<double>(box.size());
    return r;
}

EnergyValue aPhiIntegralProduct(const Interaction& phi, const ProductMeasure& mu, int truncationRadius) {
    EnergyValue e;
    for (const auto& f : phi.localFunctions()) {
        double mean = 0.0;
        const double k = static_cast<double>(f.shape.size());
        for (ConfigCode c = 0; c < f.table.size(); ++c) {
            const int minus = std::popcount(c);
            mean += f.table[c] * std::pow(mu.p, k - minus) * std::pow(1.0 - mu.p, minus);
        }
        e.value -= mean;
    }
    if (phi.hasKernel()) {
        const TwoBodyKernel& kern = *phi.kernel();
        const double m2 = mu.magnetization() * mu.magnetization();
        const Point origin(phi.dim());
        for (int r = 1; r <= truncationRadius; ++r) {
            forEachShellPoint(phi.dim(), r, [&](const Point& x) {
                if (origin < x) e.value += kern.coupling(x) * m2;
            });
        }
        e.tailBound = 0.5 * kernelTailBound(kern, phi.dim(), std::max(truncationRadius, 0)) * m2;
    }
    return e;
}

VariationalReport variationalGap(const Interaction& phi, const ProductMeasure& mu, int n, int truncationRadius,
                                 EnumerationOptions opts) {
    const EnergyValue a = aPhiIntegralProduct(phi, mu, truncationRadius);
    const PressureReport pr = pressureEstimate(phi, n, truncationRadius, opts);
    VariationalReport r;
    r.p = mu.p;
    r.F = entropyRate(mu) + a.value;
    r.Pn = pr.perSiteLogZ;
    r.slack = a.tailBound + pr.tailBoundPerSite;
    return r;
}

LipschitzReport pressureLipschitzCheck(const Interaction& phi0, const Interaction& psi, int n, int truncationRadius,
                                       EnumerationOptions opts) {
    if (psi.hasKernel()) throw std::invalid_argument("pressureLipschitzCheck: psi must be finite-support");
    const PressureReport base = pressureEstimate(phi0, n, truncationRadius, opts);
    const PressureReport pert = pressureEstimate(add(phi0, psi), n, truncationRadius, opts);
    LipschitzReport r;
    r.delta = std::fabs(pert.logZ - base.logZ) / static_cast<double>(base.sites);
    r.bound = normAbs(psi).hi;
    r.pass = r.delta <= r.bound + 1e-12;
    return r;
}

}  // namespace gibbslab
