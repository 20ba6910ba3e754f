#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gibbslab/boundary.hpp"
#include "gibbslab/interaction.hpp"
#include "gibbslab/spin.hpp"

namespace gibbslab {

/// Spins on an arbitrary finite region of Z^d (the extended configuration a
/// Hamiltonian reads from).
class SpinWindow {
public:
    SpinWindow() = default;
    /// Volume spins from `config`, plus every site within infinity-distance
    /// `radius` of the volume filled from `outside`.
    static SpinWindow around(const SpinConfiguration& config, int radius,
                             const std::function<Spin(const Point&)>& outside);
    static SpinWindow around(const SpinConfiguration& config, int radius, const BoundaryCondition& bc);

    void set(const Point& x, Spin s) { spins_[x] = s; }
    std::optional<Spin> get(const Point& x) const;
    Spin at(const Point& x) const;  ///< throws std::out_of_range when uncovered
    bool covers(const Point& x) const { return spins_.count(x) != 0; }
    std::size_t size() const { return spins_.size(); }
    /// Global spin flip.
    SpinWindow flipped() const;

private:
    std::unordered_map<Point, Spin, PointHash> spins_;
};

/// Which shapes a Hamiltonian sums over: every shape meeting the volume,
/// or only shapes contained in it (free boundary).
enum class Scope { Meets, Inside };

/// One concrete term Delta of an interaction: a translate of a stored local
/// function, or a kernel pair.
struct TermInstance {
    std::vector<Point> sites;            ///< lexicographic order
    const LocalFunction* local = nullptr; ///< null for kernel pairs
    double pairCoupling = 0.0;           ///< J for kernel pairs, value -J w w

    double value(ConfigCode codeOverSites) const {
        if (local) return local->table[codeOverSites];
        const bool agree = ((codeOverSites ^ (codeOverSites >> 1)) & 1u) == 0;
        return agree ? -pairCoupling : pairCoupling;
    }
    std::size_t size() const { return sites.size(); }
};

/// Visits every term Delta with Delta meeting (or inside) `region`. Local
/// functions are always visited in full; kernel pairs only up to infinity
/// diameter `radius`.
void forEachTerm(const Interaction& phi, const SiteSet& region, int radius, Scope scope,
                 const std::function<void(const TermInstance&)>& fn);

/// Infinity-distance of the farthest site any visited term can reach from
/// the region.
int interactionReach(const Interaction& phi, int radius);

struct EnergyValue {
    double value = 0.0;
    /// Upper bound on |H_exact - value| from kernel pairs beyond the
    /// truncation radius.
    double tailBound = 0.0;
};

/// H_{Phi,Lambda}(w) = sum of Phi_Delta over Delta meeting Lambda, reading
/// spins from `omega`. Throws std::out_of_range if `omega` does not cover
/// every site a summed term touches.
EnergyValue hamiltonian(const Interaction& phi, const SiteSet& volume, const SpinWindow& omega, int radius,
                        Scope scope = Scope::Meets);

/// A_Phi(w) = -sum over anchored shapes (middle element at 0).
EnergyValue aPhi(const Interaction& phi, const SpinWindow& omega, int radius);

/// Hamiltonian restricted to a finite volume with the outside spins folded
/// into the tables. Terms are keyed by the set of volume sites they touch;
/// term tables are indexed by ConfigCode over those sites.
class CompiledHamiltonian {
public:
    struct Term {
        std::vector<std::uint32_t> sites;  ///< volume indices, ascending
        std::vector<double> table;
    };

    /// `outside` supplies spins off the volume; it is not consulted for
    /// Scope::Inside.
    static CompiledHamiltonian compile(const Interaction& phi, const SiteSet& volume, int radius, Scope scope,
                                       const std::function<Spin(const Point&)>& outside);
    static CompiledHamiltonian compile(const Interaction& phi, const SiteSet& volume, int radius,
                                       const BoundaryCondition& bc);

    std::size_t volumeSize() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    /// Term indices touching each volume site.
    const std::vector<std::vector<std::uint32_t>>& termsBySite() const { return bySite_; }
    double tailBound() const { return tail_; }

    /// Energy of the configuration with the given code (volume <= 64 sites).
    double energy(ConfigCode code) const;
    double energy(const SpinConfiguration& config) const;
    /// Sum of the terms touching site i, with site i forced to `s`.
    double siteEnergy(const SpinConfiguration& config, std::size_t i, Spin s) const;

private:
    std::size_t n_ = 0;
    std::vector<Term> terms_;
    std::vector<std::vector<std::uint32_t>> bySite_;
    double tail_ = 0.0;
};

}  // namespace gibbslab
