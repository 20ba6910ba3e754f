#pragma once

#include <map>
#include <string>

#include "gibbslab/lattice.hpp"
#include "gibbslab/spin.hpp"

namespace gibbslab {

enum class BoundaryKind { Plus, Minus, Free, Explicit };

std::string toString(BoundaryKind k);
BoundaryKind boundaryKindFromString(const std::string& s);

/// Spins imposed outside a finite volume. Explicit conditions are a constant
/// base spin with finitely many deviations; Free drops every interaction
/// term that is not contained in the volume.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Plus;
    Spin base = 1;
    std::map<Point, Spin> deviations;

    static BoundaryCondition plus() { return {BoundaryKind::Plus, 1, {}}; }
    static BoundaryCondition minus() { return {BoundaryKind::Minus, -1, {}}; }
    static BoundaryCondition free() { return {BoundaryKind::Free, 1, {}}; }
    static BoundaryCondition explicitSpins(Spin base, std::map<Point, Spin> deviations);

    bool isFree() const { return kind == BoundaryKind::Free; }
    /// Spin at a site outside the volume. Throws std::logic_error for Free.
    Spin spinAt(const Point& x) const;
    /// Throws std::invalid_argument if a deviation lies inside `volume`.
    void validateAgainst(const SiteSet& volume) const;
    /// Negates every imposed spin.
    BoundaryCondition flipped() const;
    std::string describe() const;
};

}  // namespace gibbslab
