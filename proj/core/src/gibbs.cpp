#include "gibbslab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbslab/parallel.hpp"

namespace gibbslab {

namespace {

constexpr std::size_t kChunks = 64;

void checkVolume(const SiteSet& volume, std::size_t hardCap, EnumerationOptions opts) {
    if (volume.empty()) throw std::invalid_argument("Gibbs state needs a nonempty volume");
    const std::size_t cap = opts.allowLargeVolume ? hardCap : kDefaultEnumerationCap;
    if (volume.size() > cap) {
        throw std::length_error("volume of " + std::to_string(volume.size()) + " sites exceeds the enumeration cap " +
                                std::to_string(cap) +
                                (opts.allowLargeVolume ? "" : " (allowLargeVolume raises it to " +
                                                                  std::to_string(hardCap) + ")"));
    }
}

/// Positions of `subset` sites inside `sites`.
std::vector<std::size_t> positionsIn(const SiteSet& sites, const SiteSet& subset) {
    std::vector<std::size_t> pos;
    pos.reserve(subset.size());
    for (const Point& p : subset) {
        const auto i = sites.indexOf(p);
        if (i < 0) throw std::invalid_argument("site " + p.str() + " is not in " + sites.str());
        pos.push_back(static_cast<std::size_t>(i));
    }
    return pos;
}

ConfigCode gather(ConfigCode code, const std::vector<std::size_t>& pos) {
    ConfigCode out = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) out |= ((code >> pos[k]) & 1u) << k;
    return out;
}

ConfigCode scatter(ConfigCode sub, const std::vector<std::size_t>& pos) {
    ConfigCode out = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) out |= ((sub >> k) & 1u) << pos[k];
    return out;
}

struct LseAccumulator {
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;

    void add(double v) {
        if (v <= max) {
            sum += std::exp(v - max);
        } else {
            sum = sum * std::exp(max - v) + 1.0;
            max = v;
        }
    }
    void merge(const LseAccumulator& o) {
        if (o.sum == 0.0) return;
        if (o.max <= max) {
            sum += o.sum * std::exp(o.max - max);
        } else {
            sum = sum * std::exp(max - o.max) + o.sum;
            max = o.max;
        }
    }
    double value() const { return max + std::log(sum); }
};

}  // namespace

double Distribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

Distribution marginal(const Distribution& dist, const SiteSet& subset) {
    const auto pos = positionsIn(dist.sites, subset);
    Distribution out{subset, std::vector<double>(std::size_t{1} << subset.size(), 0.0)};
    for (ConfigCode c = 0; c < dist.probs.size(); ++c) out.probs[gather(c, pos)] += dist.probs[c];
    return out;
}

double FiniteGibbsState::probability(ConfigCode code) const { return std::exp(logWeights[code] - logZ); }

Distribution FiniteGibbsState::distribution() const {
    Distribution d{volume, std::vector<double>(logWeights.size())};
    for (ConfigCode c = 0; c < logWeights.size(); ++c) d.probs[c] = probability(c);
    return d;
}

FiniteGibbsState buildGibbs(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc,
                            int truncationRadius, EnumerationOptions opts) {
    checkVolume(volume, kHardEnumerationCap, opts);
    const auto h = CompiledHamiltonian::compile(phi, volume, truncationRadius, bc);
    FiniteGibbsState mu;
    mu.volume = volume;
    mu.boundary = bc;
    mu.truncationRadius = truncationRadius;
    mu.tailBound = h.tailBound();
    const std::size_t count = std::size_t{1} << volume.size();
    mu.logWeights.resize(count);
    parallelChunks(count, kChunks, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) mu.logWeights[c] = -h.energy(c);
    });
    LseAccumulator acc;
    acc.max = *std::max_element(mu.logWeights.begin(), mu.logWeights.end());
    for (double lw : mu.logWeights) acc.sum += std::exp(lw - acc.max);
    mu.logZ = acc.value();
    return mu;
}

LogPartition logPartitionFunction(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc,
                                  int truncationRadius, EnumerationOptions opts) {
    checkVolume(volume, kStreamingHardCap, opts);
    const auto h = CompiledHamiltonian::compile(phi, volume, truncationRadius, bc);
    const std::size_t count = std::size_t{1} << volume.size();
    std::vector<LseAccumulator> parts(kChunks);
    parallelChunks(count, kChunks, [&](std::size_t chunk, std::size_t b, std::size_t e) {
        LseAccumulator acc;
        for (std::size_t c = b; c < e; ++c) acc.add(-h.energy(c));
        parts[chunk] = acc;
    });
    LseAccumulator total;
    for (const auto& p : parts) total.merge(p);
    return {total.value(), h.tailBound()};
}

double probability(const FiniteGibbsState& mu, const std::function<bool(ConfigCode)>& event) {
    double p = 0.0;
    for (ConfigCode c = 0; c < mu.logWeights.size(); ++c) {
        if (event(c)) p += mu.probability(c);
    }
    return p;
}

double siteMagnetization(const FiniteGibbsState& mu, const Point& x) {
    const auto i = mu.volume.indexOf(x);
    if (i < 0) throw std::invalid_argument("siteMagnetization: " + x.str() + " is not in the volume");
    const auto bit = static_cast<std::size_t>(i);
    double m = 0.0;
    for (ConfigCode c = 0; c < mu.logWeights.size(); ++c) m += spinAt(c, bit) * mu.probability(c);
    return m;
}

Distribution marginal(const FiniteGibbsState& mu, const SiteSet& subset) {
    return marginal(mu.distribution(), subset);
}

double maxPointwiseDeviation(const FiniteGibbsState& a, const FiniteGibbsState& b) {
    if (!(a.volume == b.volume)) throw std::invalid_argument("states live on different volumes");
    double dev = 0.0;
    for (ConfigCode c = 0; c < a.logWeights.size(); ++c) {
        dev = std::max(dev, std::fabs(a.probability(c) - b.probability(c)));
    }
    return dev;
}

double dlrCheck(const Interaction& phi, const SiteSet& volume, const SiteSet& inner, const BoundaryCondition& bc,
                int truncationRadius) {
    if (bc.isFree()) throw std::invalid_argument("dlrCheck: the free state is not of boundary-condition form");
    if (inner.empty() || !inner.isSubsetOf(volume)) {
        throw std::invalid_argument("dlrCheck: inner set must be a nonempty subset of the volume");
    }
    const FiniteGibbsState mu = buildGibbs(phi, volume, bc, truncationRadius);
    const SiteSet rest = setDifference(volume, inner);
    const auto innerPos = positionsIn(volume, inner);
    const auto restPos = positionsIn(volume, rest);
    const std::size_t innerCount = std::size_t{1} << inner.size();
    double worst = 0.0;
    for (ConfigCode sigma = 0; sigma < (ConfigCode{1} << rest.size()); ++sigma) {
        const ConfigCode base = scatter(sigma, restPos);
        double norm = 0.0;
        std::vector<double> cond(innerCount);
        for (ConfigCode d = 0; d < innerCount; ++d) {
            cond[d] = mu.probability(base | scatter(d, innerPos));
            norm += cond[d];
        }
        if (norm <= 0.0) throw std::runtime_error("dlrCheck: conditioning event has probability zero");

        std::map<Point, Spin> dev = bc.deviations;
        for (std::size_t k = 0; k < rest.size(); ++k) dev[rest[k]] = spinAt(sigma, k);
        const auto kernelBc = BoundaryCondition::explicitSpins(bc.base, std::move(dev));
        const FiniteGibbsState local = buildGibbs(phi, inner, kernelBc, truncationRadius);
        for (ConfigCode d = 0; d < innerCount; ++d) {
            worst = std::max(worst, std::fabs(cond[d] / norm - local.probability(d)));
        }
    }
    return worst;
}

double gibbsEquivalenceCheck(const Interaction& phi0, const Interaction& psi, const SiteSet& volume,
                             const BoundaryCondition& bc, int truncationRadius) {
    if (psi.hasKernel()) throw std::invalid_argument("gibbsEquivalenceCheck: psi must be finite-support");
    if (truncationRadius < psi.maxLocalDiameter()) {
        throw std::invalid_argument("gibbsEquivalenceCheck: truncation radius " + std::to_string(truncationRadius) +
                                    " does not cover rectangle hulls of diameter " +
                                    std::to_string(psi.maxLocalDiameter()));
    }
    const FiniteGibbsState a = buildGibbs(add(phi0, psi), volume, bc, truncationRadius);
    const FiniteGibbsState b = buildGibbs(add(phi0, rectangleTransform(psi)), volume, bc, truncationRadius);
    return maxPointwiseDeviation(a, b);
}

}  // namespace gibbslab
