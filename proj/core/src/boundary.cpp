#include "gibbslab/boundary.hpp"

#include <stdexcept>

namespace gibbslab {

std::string toString(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Plus: return "plus";
        case BoundaryKind::Minus: return "minus";
        case BoundaryKind::Free: return "free";
        case BoundaryKind::Explicit: return "explicit";
    }
    return "?";
}

BoundaryKind boundaryKindFromString(const std::string& s) {
    if (s == "plus") return BoundaryKind::Plus;
    if (s == "minus") return BoundaryKind::Minus;
    if (s == "free") return BoundaryKind::Free;
    if (s == "explicit") return BoundaryKind::Explicit;
    throw std::invalid_argument("unknown boundary kind '" + s + "' (expected plus, minus, free or explicit)");
}

BoundaryCondition BoundaryCondition::explicitSpins(Spin base, std::map<Point, Spin> deviations) {
    if (base != 1 && base != -1) throw std::invalid_argument("explicit boundary base must be +1 or -1");
    for (const auto& [p, s] : deviations) {
        if (s != 1 && s != -1) throw std::invalid_argument("boundary deviation at " + p.str() + " is not +-1");
    }
    return {BoundaryKind::Explicit, base, std::move(deviations)};
}

Spin BoundaryCondition::spinAt(const Point& x) const {
    switch (kind) {
        case BoundaryKind::Plus: return 1;
        case BoundaryKind::Minus: return -1;
        case BoundaryKind::Free: throw std::logic_error("free boundary has no outside spins");
        case BoundaryKind::Explicit: {
            auto it = deviations.find(x);
            return it == deviations.end() ? base : it->second;
        }
    }
    return base;
}

void BoundaryCondition::validateAgainst(const SiteSet& volume) const {
    for (const auto& [p, s] : deviations) {
        if (volume.contains(p)) {
            throw std::invalid_argument("boundary deviation at " + p.str() + " lies inside the volume");
        }
    }
}

BoundaryCondition BoundaryCondition::flipped() const {
    switch (kind) {
        case BoundaryKind::Plus: return minus();
        case BoundaryKind::Minus: return plus();
        case BoundaryKind::Free: return free();
        case BoundaryKind::Explicit: {
            std::map<Point, Spin> dev;
            for (const auto& [p, s] : deviations) dev.emplace(p, static_cast<Spin>(-s));
            return explicitSpins(static_cast<Spin>(-base), std::move(dev));
        }
    }
    return *this;
}

std::string BoundaryCondition::describe() const {
    if (kind != BoundaryKind::Explicit) return toString(kind);
    std::string s = std::string("explicit(base=") + (base > 0 ? "+1" : "-1");
    for (const auto& [p, v] : deviations) s += ";" + p.str() + (v > 0 ? ":+1" : ":-1");
    return s + ")";
}

}  // namespace gibbslab
