#include "gibbslab/hamiltonian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace gibbslab {

// --------------------------------------------------------------- SpinWindow

SpinWindow SpinWindow::around(const SpinConfiguration& config, int radius,
                              const std::function<Spin(const Point&)>& outside) {
    SpinWindow w;
    const SiteSet& vol = config.volume();
    for (std::size_t i = 0; i < vol.size(); ++i) w.spins_[vol[i]] = config.spin(i);
    if (vol.empty() || radius <= 0) return w;
    const Rectangle box = vol.boundingRectangle().enlarged(radius);
    for (const Point& p : box.sites()) {
        if (w.spins_.count(p)) continue;
        // keep only sites within distance `radius` of some volume site
        bool near = false;
        for (const Point& v : vol) {
            if (normInf(p - v) <= radius) {
                near = true;
                break;
            }
        }
        if (near) w.spins_[p] = outside(p);
    }
    return w;
}

SpinWindow SpinWindow::around(const SpinConfiguration& config, int radius, const BoundaryCondition& bc) {
    if (bc.isFree()) return around(config, 0, [](const Point&) { return Spin{1}; });
    return around(config, radius, [&bc](const Point& p) { return bc.spinAt(p); });
}

std::optional<Spin> SpinWindow::get(const Point& x) const {
    auto it = spins_.find(x);
    if (it == spins_.end()) return std::nullopt;
    return it->second;
}

Spin SpinWindow::at(const Point& x) const {
    auto it = spins_.find(x);
    if (it == spins_.end()) throw std::out_of_range("insufficient spin coverage at site " + x.str());
    return it->second;
}

SpinWindow SpinWindow::flipped() const {
    SpinWindow w;
    for (const auto& [p, s] : spins_) w.spins_[p] = static_cast<Spin>(-s);
    return w;
}

// ------------------------------------------------------------- enumeration

namespace {

struct KernelOffset {
    Point offset;
    double coupling;
};

std::vector<KernelOffset> kernelOffsets(const TwoBodyKernel& k, int dim, int radius) {
    std::vector<KernelOffset> out;
    for (int n = 1; n <= radius; ++n) {
        forEachShellPoint(dim, n, [&](const Point& x) { out.push_back({x, k.coupling(x)}); });
    }
    return out;
}

}  // namespace

int interactionReach(const Interaction& phi, int radius) {
    int reach = phi.maxLocalDiameter();
    if (phi.hasKernel()) reach = std::max(reach, radius);
    return reach;
}

void forEachTerm(const Interaction& phi, const SiteSet& region, int radius, Scope scope,
                 const std::function<void(const TermInstance&)>& fn) {
    if (region.empty()) return;
    if (region.dim() != phi.dim()) throw std::invalid_argument("forEachTerm: dimension mismatch");
    TermInstance term;
    for (const auto& f : phi.localFunctions()) {
        // translates S + a meeting the region: a = x - s
        std::vector<Point> shifts;
        shifts.reserve(region.size() * f.shape.size());
        for (const Point& x : region) {
            for (const Point& s : f.shape) shifts.push_back(x - s);
        }
        std::sort(shifts.begin(), shifts.end());
        shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
        term.local = &f;
        for (const Point& a : shifts) {
            term.sites.clear();
            bool inside = true;
            for (const Point& s : f.shape) {
                term.sites.push_back(s + a);
                inside = inside && region.contains(term.sites.back());
            }
            if (scope == Scope::Inside && !inside) continue;
            fn(term);
        }
    }
    if (!phi.hasKernel() || radius < 1) return;
    term.local = nullptr;
    const auto offsets = kernelOffsets(*phi.kernel(), phi.dim(), radius);
    for (const Point& x : region) {
        for (const auto& [off, J] : offsets) {
            const Point y = x + off;
            const bool yInside = region.contains(y);
            if (yInside && y < x) continue;  // counted from y
            if (!yInside && scope == Scope::Inside) continue;
            term.sites.assign({std::min(x, y), std::max(x, y)});
            term.pairCoupling = J;
            fn(term);
        }
    }
}

namespace {

double kernelTailFor(const Interaction& phi, const SiteSet& volume, int radius, Scope scope) {
    if (!phi.hasKernel()) return 0.0;
    if (scope == Scope::Inside && !volume.empty() && radius >= volume.diameter()) return 0.0;
    return static_cast<double>(volume.size()) * kernelTailBound(*phi.kernel(), phi.dim(), std::max(radius, 0));
}

}  // namespace

EnergyValue hamiltonian(const Interaction& phi, const SiteSet& volume, const SpinWindow& omega, int radius,
                        Scope scope) {
    EnergyValue e;
    forEachTerm(phi, volume, radius, scope, [&](const TermInstance& t) {
        ConfigCode code = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) code |= bitOfSpin(omega.at(t.sites[k])) << k;
        e.value += t.value(code);
    });
    e.tailBound = kernelTailFor(phi, volume, radius, scope);
    return e;
}

EnergyValue aPhi(const Interaction& phi, const SpinWindow& omega, int radius) {
    EnergyValue e;
    const Point origin(phi.dim());
    for (const auto& f : phi.localFunctions()) {
        ConfigCode code = 0;
        for (std::size_t k = 0; k < f.shape.size(); ++k) code |= bitOfSpin(omega.at(f.shape[k])) << k;
        e.value -= f.table[code];
    }
    if (phi.hasKernel()) {
        const TwoBodyKernel& k = *phi.kernel();
        const Spin s0 = omega.at(origin);
        for (int n = 1; n <= radius; ++n) {
            forEachShellPoint(phi.dim(), n, [&](const Point& x) {
                if (!(origin < x)) return;  // {0,x} has middle element 0 iff 0 < x
                e.value += k.coupling(x) * s0 * omega.at(x);
            });
        }
        // anchored pairs are half of all pairs containing the origin
        e.tailBound = 0.5 * kernelTailBound(k, phi.dim(), std::max(radius, 0));
    }
    return e;
}

// ------------------------------------------------------ CompiledHamiltonian

CompiledHamiltonian CompiledHamiltonian::compile(const Interaction& phi, const SiteSet& volume, int radius,
                                                 Scope scope,
                                                 const std::function<Spin(const Point&)>& outside) {
    CompiledHamiltonian h;
    h.n_ = volume.size();
    std::map<std::vector<std::uint32_t>, std::vector<double>> merged;
    std::vector<std::uint32_t> inner;
    std::vector<std::size_t> innerPos;
    forEachTerm(phi, volume, radius, scope, [&](const TermInstance& t) {
        inner.clear();
        innerPos.clear();
        ConfigCode fixed = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) {
            const auto idx = volume.indexOf(t.sites[k]);
            if (idx >= 0) {
                inner.push_back(static_cast<std::uint32_t>(idx));
                innerPos.push_back(k);
            } else {
                fixed |= bitOfSpin(outside(t.sites[k])) << k;
            }
        }
        // term sites are in lex order and volume indices follow lex order
        auto& table = merged[inner];
        table.resize(std::size_t{1} << inner.size(), 0.0);
        for (ConfigCode c = 0; c < table.size(); ++c) {
            ConfigCode full = fixed;
            for (std::size_t j = 0; j < innerPos.size(); ++j) full |= ((c >> j) & 1u) << innerPos[j];
            table[c] += t.value(full);
        }
    });
    h.terms_.reserve(merged.size());
    h.bySite_.assign(h.n_, {});
    for (auto& [sites, table] : merged) {
        const auto id = static_cast<std::uint32_t>(h.terms_.size());
        for (auto s : sites) h.bySite_[s].push_back(id);
        h.terms_.push_back(Term{sites, std::move(table)});
    }
    h.tail_ = kernelTailFor(phi, volume, radius, scope);
    return h;
}

CompiledHamiltonian CompiledHamiltonian::compile(const Interaction& phi, const SiteSet& volume, int radius,
                                                 const BoundaryCondition& bc) {
    bc.validateAgainst(volume);
    if (bc.isFree()) {
        return compile(phi, volume, radius, Scope::Inside, [](const Point&) -> Spin {
            throw std::logic_error("free boundary consulted");
        });
    }
    return compile(phi, volume, radius, Scope::Meets, [&bc](const Point& p) { return bc.spinAt(p); });
}

double CompiledHamiltonian::energy(ConfigCode code) const {
    double e = 0.0;
    for (const Term& t : terms_) {
        ConfigCode idx = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) idx |= ((code >> t.sites[k]) & 1u) << k;
        e += t.table[idx];
    }
    return e;
}

double CompiledHamiltonian::energy(const SpinConfiguration& config) const {
    double e = 0.0;
    for (const Term& t : terms_) {
        ConfigCode idx = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) idx |= bitOfSpin(config.spin(t.sites[k])) << k;
        e += t.table[idx];
    }
    return e;
}

double CompiledHamiltonian::siteEnergy(const SpinConfiguration& config, std::size_t i, Spin s) const {
    double e = 0.0;
    for (auto id : bySite_[i]) {
        const Term& t = terms_[id];
        ConfigCode idx = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) {
            const Spin v = t.sites[k] == i ? s : config.spin(t.sites[k]);
            idx |= bitOfSpin(v) << k;
        }
        e += t.table[idx];
    }
    return e;
}

}  // namespace gibbslab
