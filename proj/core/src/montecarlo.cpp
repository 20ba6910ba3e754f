#include "gibbslab/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gibbslab/parallel.hpp"

namespace gibbslab {

namespace {

constexpr long kRefreshInterval = 1 << 16;

/// In-place Walsh-Hadamard transform: afterwards t[A] = 2^-k sum_c t[c]
/// (-1)^{|c & A|}, so that f(c) = sum_A t[A] prod_{j in A} w_j.
void walsh(std::vector<double>& t) {
    for (std::size_t len = 1; len < t.size(); len <<= 1) {
        for (std::size_t i = 0; i < t.size(); i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double a = t[j];
                const double b = t[j + len];
                t[j] = a + b;
                t[j + len] = a - b;
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(t.size());
    for (double& v : t) v *= scale;
}

}  // namespace

std::string toString(InitialState s) {
    switch (s) {
        case InitialState::BoundaryAligned: return "boundary";
        case InitialState::Plus: return "plus";
        case InitialState::Minus: return "minus";
        case InitialState::Explicit: return "explicit";
    }
    return "?";
}

InitialState initialStateFromString(const std::string& s) {
    if (s == "boundary") return InitialState::BoundaryAligned;
    if (s == "plus") return InitialState::Plus;
    if (s == "minus") return InitialState::Minus;
    if (s == "explicit") return InitialState::Explicit;
    throw std::invalid_argument("unknown initial state '" + s + "' (expected boundary, plus, minus or explicit)");
}

void ChainConfig::validate() const {
    if (volume.dim() < 1) throw std::invalid_argument("chain: volume is not set");
    if (sweeps <= 0) throw std::invalid_argument("chain: sweeps must be positive");
    if (burnIn < 0 || burnIn >= sweeps) throw std::invalid_argument("chain: burn_in must lie in [0, sweeps)");
    if (thinning < 1) throw std::invalid_argument("chain: thinning must be at least 1");
    if (truncationRadius < 0) throw std::invalid_argument("chain: truncation radius must be nonnegative");
    if (init == InitialState::Explicit && initialSpins.size() != volume.volume()) {
        throw std::invalid_argument("chain: explicit initial state needs one spin per site");
    }
}

SpinConfiguration ChainConfig::initialConfiguration() const {
    SiteSet sites = SiteSet::fromRectangle(volume);
    switch (init) {
        case InitialState::Plus: return SpinConfiguration(std::move(sites), 1);
        case InitialState::Minus: return SpinConfiguration(std::move(sites), -1);
        case InitialState::Explicit: return SpinConfiguration::fromSpins(std::move(sites), initialSpins);
        case InitialState::BoundaryAligned: break;
    }
    const Spin s = boundary.kind == BoundaryKind::Free ? Spin{1} : boundary.base;
    return SpinConfiguration(std::move(sites), s);
}

// ---------------------------------------------------------- GlauberSampler

GlauberSampler::GlauberSampler(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc,
                               int truncationRadius, SpinConfiguration initial)
    : hamiltonian_(CompiledHamiltonian::compile(phi, volume, truncationRadius, bc)), state_(std::move(initial)) {
    if (!(state_.volume() == volume)) throw std::invalid_argument("GlauberSampler: initial state volume mismatch");
    const std::size_t n = volume.size();
    field_.assign(n, 0.0);
    couplings_.assign(n, {});
    higherBySite_.assign(n, {});
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> pairs;
    std::map<std::vector<std::uint32_t>, double> higher;
    for (const auto& term : hamiltonian_.terms()) {
        std::vector<double> coeff = term.table;
        walsh(coeff);
        for (std::size_t a = 1; a < coeff.size(); ++a) {
            if (coeff[a] == 0.0) continue;
            std::vector<std::uint32_t> sites;
            for (std::size_t k = 0; k < term.sites.size(); ++k) {
                if ((a >> k) & 1u) sites.push_back(term.sites[k]);
            }
            if (sites.size() == 1) {
                field_[sites[0]] += coeff[a];
            } else if (sites.size() == 2) {
                pairs[{sites[0], sites[1]}] += coeff[a];
            } else {
                higher[sites] += coeff[a];
            }
        }
    }
    for (const auto& [ij, J] : pairs) {
        couplings_[ij.first].push_back({ij.second, J});
        couplings_[ij.second].push_back({ij.first, J});
    }
    for (auto& [sites, c] : higher) {
        const auto id = static_cast<std::uint32_t>(higher_.size());
        for (auto s : sites) higherBySite_[s].push_back(id);
        higher_.push_back({sites, c});
    }
    refreshFields();
}

void GlauberSampler::refreshFields() {
    local_ = field_;
    for (std::size_t i = 0; i < local_.size(); ++i) {
        for (const auto& [j, J] : couplings_[i]) local_[i] += J * state_.spin(j);
    }
    updatesSinceRefresh_ = 0;
}

double GlauberSampler::conditionalPlus(std::size_t i) const {
    double h = local_[i];
    for (auto id : higherBySite_[i]) {
        const Higher& t = higher_[id];
        double prod = t.coefficient;
        for (auto s : t.sites) {
            if (s != i) prod *= state_.spin(s);
        }
        h += prod;
    }
    // E(+) - E(-) = 2h
    return 1.0 / (1.0 + std::exp(2.0 * h));
}

void GlauberSampler::update(std::size_t i, double u) {
    const Spin next = u < conditionalPlus(i) ? Spin{1} : Spin{-1};
    if (next != state_.spin(i)) {
        state_.set(i, next);
        const double twice = 2.0 * next;
        for (const auto& [j, J] : couplings_[i]) local_[j] += J * twice;
        if (++updatesSinceRefresh_ >= kRefreshInterval) refreshFields();
    }
}

void GlauberSampler::sweep(Rng& rng, bool mirrored) {
    for (std::size_t i = 0; i < state_.size(); ++i) {
        const double u = rng.uniform();
        update(i, mirrored ? 1.0 - u : u);
    }
}

void glauberStep(GlauberSampler& sampler, const Point& site, double u) {
    const auto i = sampler.state().volume().indexOf(site);
    if (i < 0) throw std::invalid_argument("glauberStep: site " + site.str() + " is not in the volume");
    sampler.update(static_cast<std::size_t>(i), u);
}

// ------------------------------------------------------------ estimators

MagnetizationEstimate batchMeans(const std::vector<double>& samples, const Point& site) {
    if (samples.size() < static_cast<std::size_t>(kBatchCount)) {
        throw std::invalid_argument("batchMeans: need at least " + std::to_string(kBatchCount) + " samples");
    }
    MagnetizationEstimate est;
    est.site = site;
    est.samples = static_cast<long>(samples.size());
    est.batches = kBatchCount;
    double total = 0.0;
    for (double s : samples) total += s;
    est.mean = total / static_cast<double>(samples.size());
    const std::size_t per = samples.size() / kBatchCount;
    const std::size_t skip = samples.size() - per * kBatchCount;
    std::vector<double> means(kBatchCount, 0.0);
    for (int b = 0; b < kBatchCount; ++b) {
        for (std::size_t k = 0; k < per; ++k) means[b] += samples[skip + b * per + k];
        means[b] /= static_cast<double>(per);
    }
    double mm = 0.0;
    for (double m : means) mm += m;
    mm /= kBatchCount;
    double var = 0.0;
    for (double m : means) var += (m - mm) * (m - mm);
    var /= kBatchCount - 1;
    est.standardError = std::sqrt(var / kBatchCount);
    return est;
}

MagnetizationEstimate magnetization(const Interaction& phi, const ChainConfig& config, const Point& site,
                                    std::vector<TrajectoryRow>* trajectory) {
    config.validate();
    if (!config.volume.contains(site)) throw std::invalid_argument("magnetization: site " + site.str() + " is not in the volume");
    SpinConfiguration init = config.initialConfiguration();
    const SiteSet volume = init.volume();
    const auto idx = static_cast<std::size_t>(volume.indexOf(site));
    GlauberSampler sampler(phi, volume, config.boundary, config.truncationRadius, std::move(init));
    Rng rng(config.seed);
    std::vector<double> samples;
    const double n = static_cast<double>(volume.size());
    for (long s = 1; s <= config.sweeps; ++s) {
        sampler.sweep(rng);
        if (s <= config.burnIn || (s - config.burnIn) % config.thinning != 0) continue;
        samples.push_back(sampler.state().spin(idx));
        if (trajectory) {
            trajectory->push_back(
                {s, sampler.energy() / n, static_cast<double>(sampler.state().magnetization()) / n});
        }
    }
    return batchMeans(samples, site);
}

CoexistenceReport coexistenceIndicator(const Interaction& phi, const CoexistenceSettings& settings) {
    if (settings.side < 1) throw std::invalid_argument("coexistence: side must be positive");
    if (settings.seeds.empty()) throw std::invalid_argument("coexistence: at least one seed is required");
    if (settings.init == InitialState::Explicit) {
        throw std::invalid_argument("coexistence: explicit initial spins are not supported");
    }
    CoexistenceReport rep;
    rep.symmetric = isSpinFlipSymmetric(phi, 1e-12);
    if (!rep.symmetric) {
        rep.warning = "interaction is not spin-flip symmetric; the Plus/Minus gap does not indicate coexistence";
    }
    std::vector<int> sides(static_cast<std::size_t>(phi.dim()), settings.side);
    const Rectangle box = boxFromOrigin(sides);
    rep.site = Point(phi.dim());
    for (int i = 0; i < phi.dim(); ++i) rep.site[i] = settings.side / 2;

    const std::size_t k = settings.seeds.size();
    std::vector<MagnetizationEstimate> results(2 * k);
    parallelChunks(2 * k, 2 * k, [&](std::size_t task, std::size_t, std::size_t) {
        ChainConfig cfg;
        cfg.volume = box;
        cfg.boundary = task % 2 == 0 ? BoundaryCondition::plus() : BoundaryCondition::minus();
        cfg.truncationRadius = settings.truncationRadius;
        cfg.seed = settings.seeds[task / 2];
        cfg.sweeps = settings.sweeps;
        cfg.burnIn = settings.burnIn;
        cfg.thinning = settings.thinning;
        cfg.init = settings.init;
        results[task] = magnetization(phi, cfg, rep.site);
    });
    double vp = 0.0, vm = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
        rep.mPlus += results[2 * s].mean;
        rep.mMinus += results[2 * s + 1].mean;
        vp += results[2 * s].standardError * results[2 * s].standardError;
        vm += results[2 * s + 1].standardError * results[2 * s + 1].standardError;
    }
    const double kd = static_cast<double>(k);
    rep.mPlus /= kd;
    rep.mMinus /= kd;
    rep.sePlus = std::sqrt(vp) / kd;
    rep.seMinus = std::sqrt(vm) / kd;
    rep.gap = rep.mPlus - rep.mMinus;
    rep.seGap = std::sqrt(rep.sePlus * rep.sePlus + rep.seMinus * rep.seMinus);
    return rep;
}

}  // namespace gibbslab
