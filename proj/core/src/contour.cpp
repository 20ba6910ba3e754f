#include "gibbslab/contour.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gibbslab/gibbs.hpp"
#include "gibbslab/hamiltonian.hpp"

namespace gibbslab {

// ---------------------------------------------------------------- plaquettes

int Plaquette::axis() const {
    for (int i = 0; i < inner.dim(); ++i) {
        if (inner[i] != outer[i]) return i;
    }
    return -1;
}

namespace {

struct FaceKey {
    Point lo;
    int axis;
    friend bool operator==(const FaceKey&, const FaceKey&) = default;
};

struct FaceKeyHash {
    std::size_t operator()(const FaceKey& k) const noexcept {
        return PointHash{}(k.lo) * 31u + static_cast<std::size_t>(k.axis);
    }
};

/// Closed face of (lo, axis) in doubled coordinates, per axis [a, b].
bool faceBoxesIntersect(const Point& lo1, int ax1, const Point& lo2, int ax2) {
    for (int i = 0; i < lo1.dim(); ++i) {
        const int a1 = i == ax1 ? 2 * lo1[i] + 1 : 2 * lo1[i] - 1;
        const int b1 = i == ax1 ? 2 * lo1[i] + 1 : 2 * lo1[i] + 1;
        const int a2 = i == ax2 ? 2 * lo2[i] + 1 : 2 * lo2[i] - 1;
        const int b2 = i == ax2 ? 2 * lo2[i] + 1 : 2 * lo2[i] + 1;
        if (b1 < a2 || b2 < a1) return false;
    }
    return true;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// Cells enclosed by a closed family of faces: odd number of axis-0 faces
/// strictly below along axis 0.
SiteSet parityInterior(const std::vector<Plaquette>& faces) {
    const int dim = faces.front().inner.dim();
    std::map<Point, std::vector<int>> rows;  // cell with coord 0 zeroed -> lo[0] of axis-0 faces
    Point lo = faces.front().inner;
    Point hi = lo;
    for (const Plaquette& f : faces) {
        for (const Point& c : {f.inner, f.outer}) {
            for (int i = 0; i < dim; ++i) {
                lo[i] = std::min(lo[i], c[i]);
                hi[i] = std::max(hi[i], c[i]);
            }
        }
        if (f.axis() != 0) continue;
        Point key = f.lo();
        key[0] = 0;
        rows[key].push_back(f.lo()[0]);
    }
    std::vector<Point> cells;
    for (auto& [key, xs] : rows) {
        std::sort(xs.begin(), xs.end());
        Point z = key;
        for (int x = lo[0]; x <= hi[0]; ++x) {
            z[0] = x;
            const auto below = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
            if (below % 2 == 1) cells.push_back(z);
        }
    }
    return SiteSet(std::move(cells));
}

Spin spinOf(const SpinConfiguration& omega, const Point& x) {
    const auto i = omega.volume().indexOf(x);
    return i < 0 ? omega.outside() : omega.spin(static_cast<std::size_t>(i));
}

std::string joinViolations(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
    return s;
}

}  // namespace

bool facesIntersect(const Plaquette& a, const Plaquette& b) {
    return faceBoxesIntersect(a.lo(), a.axis(), b.lo(), b.axis());
}

std::vector<Plaquette> cubeBoundary(const SiteSet& set) {
    std::vector<Plaquette> out;
    const int dim = set.dim();
    for (const Point& x : set) {
        for (int axis = 0; axis < dim; ++axis) {
            for (int sgn : {-1, 1}) {
                const Point y = x + Point::unit(dim, axis, sgn);
                if (!set.contains(y)) out.push_back({x, y});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Contour::str() const {
    std::ostringstream os;
    os << "contour(|gamma|=" << plaquettes.size() << ", interior=" << interior.str() << ")";
    return os.str();
}

Contour contourOf(const SiteSet& interior) {
    if (interior.empty()) throw std::invalid_argument("contourOf: empty interior");
    return {cubeBoundary(interior), interior};
}

std::size_t ContourFamily::totalSize() const {
    std::size_t n = 0;
    for (const auto& c : contours) n += c.size();
    return n;
}

bool ContourFamily::contains(const Contour& g) const {
    return std::binary_search(contours.begin(), contours.end(), g);
}

SiteSet minusRegion(const SpinConfiguration& omega) {
    if (omega.outside() != 1) throw std::invalid_argument("minusRegion: configuration must be +1 off the volume");
    std::vector<Point> minus;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        if (omega.spin(i) < 0) minus.push_back(omega.volume()[i]);
    }
    return SiteSet(std::move(minus));
}

ContourFamily extractContours(const SpinConfiguration& omega) {
    const SiteSet minus = minusRegion(omega);
    ContourFamily fam;
    if (minus.empty()) return fam;
    const std::vector<Plaquette> faces = cubeBoundary(minus);
    const int dim = minus.dim();

    std::unordered_map<FaceKey, std::size_t, FaceKeyHash> index;
    for (std::size_t i = 0; i < faces.size(); ++i) index[{faces[i].lo(), faces[i].axis()}] = i;
    UnionFind uf(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Point lo = faces[i].lo();
        const int ax = faces[i].axis();
        auto visit = [&](const Point& off) {
            for (int a2 = 0; a2 < dim; ++a2) {
                const Point lo2 = lo + off;
                auto it = index.find({lo2, a2});
                if (it != index.end() && faceBoxesIntersect(lo, ax, lo2, a2)) uf.unite(i, it->second);
            }
        };
        visit(Point(dim));
        forEachLInfOffset(dim, visit);
    }

    std::map<std::size_t, std::vector<Plaquette>> groups;
    for (std::size_t i = 0; i < faces.size(); ++i) groups[uf.find(i)].push_back(faces[i]);
    for (auto& [root, group] : groups) {
        Contour c;
        c.interior = parityInterior(group);
        for (Plaquette f : group) {
            if (!c.interior.contains(f.inner)) std::swap(f.inner, f.outer);
            c.plaquettes.push_back(f);
        }
        std::sort(c.plaquettes.begin(), c.plaquettes.end());
        fam.contours.push_back(std::move(c));
    }
    std::sort(fam.contours.begin(), fam.contours.end());
    return fam;
}

SpinConfiguration flip(const SpinConfiguration& omega, const Contour& gamma) {
    if (!gamma.interior.isSubsetOf(omega.volume())) {
        throw std::invalid_argument("flip: interior of " + gamma.str() + " leaves the volume");
    }
    if (!extractContours(omega).contains(gamma)) {
        throw std::invalid_argument("flip: " + gamma.str() + " is not a contour of the configuration");
    }
    SpinConfiguration out = omega;
    for (const Point& x : gamma.interior) out.flip(static_cast<std::size_t>(omega.volume().indexOf(x)));
    return out;
}

// ------------------------------------------------------------------- C_d

int computeCd(int dim) {
    if (dim < 2 || dim > kMaxDimension) throw std::invalid_argument("computeCd: dimension must be in [2, 4]");
    const Point refLo(dim);
    int count = 0;
    Rectangle box{Point(dim), Point(dim)};
    for (int i = 0; i < dim; ++i) {
        box.lo[i] = -2;
        box.hi[i] = 2;
    }
    for (const Point& lo : box.sites()) {
        for (int axis = 0; axis < dim; ++axis) {
            if (lo == refLo && axis == 0) continue;
            if (faceBoxesIntersect(refLo, 0, lo, axis)) ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------- census

namespace {

constexpr int kGridBits = 256;
using Mask = std::bitset<kGridBits>;

struct Polyplet {
    Mask mask;
    std::vector<std::pair<int, int>> cells;
    int xlo = 0, xhi = 0, ylo = 0, yhi = 0;
};

/// Perimeter of a cell set given as a lookup, and whether its complement is
/// king-connected (checked inside the bounding box enlarged by one).
std::pair<int, bool> perimeterAndComplement(const Polyplet& p, int off, int side) {
    auto in = [&](int x, int y) {
        if (x < -off || x > off || y < -off || y > off) return false;
        return p.mask.test(static_cast<std::size_t>((x + off) * side + (y + off)));
    };
    int perim = 0;
    for (auto [x, y] : p.cells) {
        perim += !in(x + 1, y) + !in(x - 1, y) + !in(x, y + 1) + !in(x, y - 1);
    }
    const int x0 = p.xlo - 1, x1 = p.xhi + 1, y0 = p.ylo - 1, y1 = p.yhi + 1;
    const int w = x1 - x0 + 1, h = y1 - y0 + 1;
    std::vector<char> seen(static_cast<std::size_t>(w * h), 0);
    std::vector<std::pair<int, int>> stack;
    int complement = 0;
    for (int x = x0; x <= x1; ++x) {
        for (int y = y0; y <= y1; ++y) {
            if (in(x, y)) continue;
            ++complement;
            if (x == x0 || x == x1 || y == y0 || y == y1) {
                seen[static_cast<std::size_t>((x - x0) * h + (y - y0))] = 1;
                stack.push_back({x, y});
            }
        }
    }
    int reached = static_cast<int>(stack.size());
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                const int nx = x + dx, ny = y + dy;
                if (nx < x0 || nx > x1 || ny < y0 || ny > y1 || in(nx, ny)) continue;
                auto& s = seen[static_cast<std::size_t>((nx - x0) * h + (ny - y0))];
                if (s) continue;
                s = 1;
                ++reached;
                stack.push_back({nx, ny});
            }
        }
    }
    return {perim, reached == complement};
}

}  // namespace

std::vector<CensusRow> contourCensus(int dim, int nMax) {
    if (dim != 2) throw std::invalid_argument("contourCensus: only d = 2 is supported");
    if (nMax > kCensusMaxPerimeter) {
        throw std::length_error("contourCensus: nMax " + std::to_string(nMax) + " exceeds the cap " +
                                std::to_string(kCensusMaxPerimeter));
    }
    const double cd = computeCd(2);
    std::vector<CensusRow> rows;
    for (int n = 4; n <= nMax; n += 2) rows.push_back({n, 0, (n + 1) * std::pow(cd, 2 * n + 1), 0.0});
    if (rows.empty()) return rows;

    // perimeter >= 2 (width + height), so width + height <= nMax / 2
    const int half = nMax / 2;
    const int off = std::max(half - 2, 0);
    const int side = 2 * off + 1;
    auto bit = [&](int x, int y) { return static_cast<std::size_t>((x + off) * side + (y + off)); };

    std::unordered_set<Mask> visited;
    std::vector<Polyplet> level;
    Polyplet seed;
    seed.mask.set(bit(0, 0));
    seed.cells = {{0, 0}};
    level.push_back(seed);
    visited.insert(seed.mask);
    while (!level.empty()) {
        std::vector<Polyplet> next;
        for (const Polyplet& p : level) {
            const auto [perim, ok] = perimeterAndComplement(p, off, side);
            if (ok && perim <= nMax) rows[static_cast<std::size_t>((perim - 4) / 2)].count++;
            for (auto [cx, cy] : p.cells) {
                for (int dx = -1; dx <= 1; ++dx) {
                    for (int dy = -1; dy <= 1; ++dy) {
                        const int x = cx + dx, y = cy + dy;
                        if (x < -off || x > off || y < -off || y > off) continue;
                        if (p.mask.test(bit(x, y))) continue;
                        const int xlo = std::min(p.xlo, x), xhi = std::max(p.xhi, x);
                        const int ylo = std::min(p.ylo, y), yhi = std::max(p.yhi, y);
                        if ((xhi - xlo + 1) + (yhi - ylo + 1) > half) continue;
                        Mask m = p.mask;
                        m.set(bit(x, y));
                        if (!visited.insert(m).second) continue;
                        Polyplet q{m, p.cells, xlo, xhi, ylo, yhi};
                        q.cells.push_back({x, y});
                        next.push_back(std::move(q));
                    }
                }
            }
        }
        level = std::move(next);
    }
    for (auto& r : rows) r.ratio = static_cast<double>(r.count) / r.bound;
    return rows;
}

// ---------------------------------------------------------------- epsilon

double epsilonOfL(double L, int dim) {
    const double cd = computeCd(dim);
    const double gap = L - std::log(cd);
    if (!(gap > 0.0)) throw std::domain_error("epsilonOfL: series diverges for L <= log C_d");
    const double q = std::exp(-2.0 * gap);
    return cd * (2.0 * q - q * q) / ((1.0 - q) * (1.0 - q));
}

std::vector<EpsilonRow> epsilonScan(int dim, double step, double lMax) {
    if (!(step > 0.0)) throw std::invalid_argument("epsilonScan: step must be positive");
    const double logC = std::log(static_cast<double>(computeCd(dim)));
    std::vector<EpsilonRow> rows;
    for (long k = static_cast<long>(std::floor(logC / step)) + 1;; ++k) {
        const double L = static_cast<double>(k) * step;
        if (L > lMax + 1e-12) break;
        if (L <= logC) continue;
        rows.push_back({L, epsilonOfL(L, dim)});
    }
    return rows;
}

double epsilonThreshold(int dim, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("epsilonThreshold: step must be positive");
    const double logC = std::log(static_cast<double>(computeCd(dim)));
    for (long k = static_cast<long>(std::floor(logC / step)) + 1; k < 100000000; ++k) {
        const double L = static_cast<double>(k) * step;
        if (L <= logC) continue;
        if (epsilonOfL(L, dim) < 0.5) return L;
    }
    throw std::runtime_error("epsilonThreshold: no grid point found");
}

// ------------------------------------------------------------- delta term

double deltaTerm(const Interaction& psi, const SpinConfiguration& omega, const Contour& gamma) {
    if (psi.hasKernel()) throw std::invalid_argument("deltaTerm: psi must be finite-support");
    if (!isSpinFlipSymmetric(psi, 1e-12)) throw std::invalid_argument("deltaTerm: psi is not spin-flip symmetric");
    if (!isZeroOnNonL1Connected(psi)) {
        throw std::invalid_argument("deltaTerm: psi is nonzero on a set that is not l1-connected");
    }
    const SpinConfiguration flipped = flip(omega, gamma);
    double delta = 0.0;
    forEachTerm(psi, omega.volume(), 0, Scope::Meets, [&](const TermInstance& t) {
        bool meets = false;
        bool inside = true;
        ConfigCode before = 0;
        ConfigCode after = 0;
        for (std::size_t k = 0; k < t.sites.size(); ++k) {
            const bool in = gamma.interior.contains(t.sites[k]);
            meets = meets || in;
            inside = inside && in;
            before |= bitOfSpin(spinOf(omega, t.sites[k])) << k;
            after |= bitOfSpin(spinOf(flipped, t.sites[k])) << k;
        }
        if (meets && !inside) delta -= t.value(before) - t.value(after);
    });
    return delta;
}

// --------------------------------------------------------------- Peierls

std::vector<std::string> peierlsPreconditions(double beta, const Interaction& psi, double delta,
                                              const SiteSet& volume, const std::vector<Contour>& contours) {
    std::vector<std::string> v;
    if (!std::isfinite(beta)) v.push_back("beta must be finite");
    if (!(delta >= 0.0)) v.push_back("delta must be nonnegative");
    if (psi.hasKernel()) v.push_back("psi must be finite-support (materialize the kernel first)");
    if (!isSpinFlipSymmetric(psi, 1e-12)) v.push_back("psi is not spin-flip symmetric");
    if (!isZeroOnNonL1Connected(psi)) v.push_back("psi is nonzero on a set that is not l1-connected");
    if (!psi.hasKernel()) {
        const double na = normAbs(psi).hi;
        if (na > delta) v.push_back("normAbs(psi) = " + std::to_string(na) + " exceeds delta");
    }
    if (volume.empty() || !isCConnected(volume)) v.push_back("volume is not c-connected");
    for (std::size_t i = 0; i < contours.size(); ++i) {
        const Contour& g = contours[i];
        const std::string tag = "contour " + std::to_string(i + 1) + ": ";
        if (g.interior.empty()) {
            v.push_back(tag + "empty interior");
            continue;
        }
        if (!isCConnected(g.interior)) v.push_back(tag + "interior is not c-connected");
        if (!g.interior.isSubsetOf(volume)) v.push_back(tag + "interior leaves the volume");
        if (g.plaquettes != cubeBoundary(g.interior)) v.push_back(tag + "plaquettes do not bound the interior");
        for (std::size_t j = 0; j < i; ++j) {
            if (g.interior.intersects(contours[j].interior)) {
                v.push_back(tag + "interior meets that of contour " + std::to_string(j + 1));
            }
        }
    }
    return v;
}

namespace {

/// Membership test for one contour in Gamma(w), on codes over the volume.
struct ContourProbe {
    // Edges as pairs of volume indices; -1 marks a site off the volume (+1).
    std::vector<std::pair<int, int>> own;
    std::vector<std::pair<int, int>> touching;

    static ContourProbe build(const Contour& g, const SiteSet& volume) {
        ContourProbe p;
        auto idx = [&](const Point& x) { return static_cast<int>(volume.indexOf(x)); };
        std::set<Plaquette> ownSet;
        for (const Plaquette& f : g.plaquettes) {
            p.own.push_back({idx(f.inner), idx(f.outer)});
            ownSet.insert({f.lo(), f.lo() + Point::unit(f.lo().dim(), f.axis())});
        }
        std::set<Plaquette> near;
        const int dim = volume.dim();
        for (const Plaquette& f : g.plaquettes) {
            auto visit = [&](const Point& off) {
                for (int a = 0; a < dim; ++a) {
                    const Point lo = f.lo() + off;
                    const Plaquette q{lo, lo + Point::unit(dim, a)};
                    if (!ownSet.count(q) && facesIntersect(f, q)) near.insert(q);
                }
            };
            visit(Point(dim));
            forEachLInfOffset(dim, visit);
        }
        for (const Plaquette& q : near) p.touching.push_back({idx(q.inner), idx(q.outer)});
        return p;
    }

    static bool differ(ConfigCode c, std::pair<int, int> e) {
        const auto bitA = e.first < 0 ? 0u : (c >> e.first) & 1u;
        const auto bitB = e.second < 0 ? 0u : (c >> e.second) & 1u;
        return bitA != bitB;
    }

    bool present(ConfigCode c) const {
        for (const auto& e : own) {
            if (!differ(c, e)) return false;
        }
        for (const auto& e : touching) {
            if (differ(c, e)) return false;
        }
        return true;
    }
};

}  // namespace

PeierlsReport peierlsVerify(double beta, const Interaction& psi, double delta, const SiteSet& volume,
                            const std::vector<Contour>& contours, int truncationRadius) {
    const auto violations = peierlsPreconditions(beta, psi, delta, volume, contours);
    if (!violations.empty()) throw std::invalid_argument("peierlsVerify: " + joinViolations(violations));
    if (contours.empty()) throw std::invalid_argument("peierlsVerify: at least one contour is required");
    const FiniteGibbsState mu =
        buildGibbs(add(ising(beta, volume.dim()), psi), volume, BoundaryCondition::plus(), truncationRadius);
    std::vector<ContourProbe> probes;
    std::size_t total = 0;
    for (const Contour& g : contours) {
        probes.push_back(ContourProbe::build(g, volume));
        total += g.size();
    }
    PeierlsReport rep;
    rep.contours = contours;
    rep.beta = beta;
    rep.delta = delta;
    rep.tailBound = mu.tailBound;
    for (ConfigCode c = 0; c < mu.logWeights.size(); ++c) {
        if (std::all_of(probes.begin(), probes.end(), [c](const ContourProbe& p) { return p.present(c); })) {
            rep.lhs += mu.probability(c);
        }
    }
    rep.rhs = std::exp(-2.0 * (beta - delta) * static_cast<double>(total));
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

std::vector<PeierlsReport> peierlsSweep(double beta, const Interaction& psi, double delta, const SiteSet& volume,
                                        int truncationRadius) {
    const auto violations = peierlsPreconditions(beta, psi, delta, volume, {});
    if (!violations.empty()) throw std::invalid_argument("peierlsSweep: " + joinViolations(violations));
    const FiniteGibbsState mu =
        buildGibbs(add(ising(beta, volume.dim()), psi), volume, BoundaryCondition::plus(), truncationRadius);
    std::map<Contour, std::size_t> ids;
    std::vector<const Contour*> byId;
    std::map<std::size_t, double> single;
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    for (ConfigCode c = 0; c < mu.logWeights.size(); ++c) {
        const double p = mu.probability(c);
        const ContourFamily fam = extractContours(SpinConfiguration::fromCode(volume, c));
        std::vector<std::size_t> present;
        for (const Contour& g : fam.contours) {
            auto [it, inserted] = ids.emplace(g, byId.size());
            if (inserted) byId.push_back(&it->first);
            present.push_back(it->second);
        }
        for (std::size_t i = 0; i < present.size(); ++i) {
            single[present[i]] += p;
            for (std::size_t j = i + 1; j < present.size(); ++j) {
                const auto a = std::min(present[i], present[j]);
                const auto b = std::max(present[i], present[j]);
                if (!byId[a]->interior.intersects(byId[b]->interior)) pairs[{a, b}] += p;
            }
        }
    }
    std::vector<PeierlsReport> out;
    auto emit = [&](std::vector<Contour> cs, double lhs) {
        PeierlsReport r;
        std::size_t total = 0;
        for (const auto& g : cs) total += g.size();
        r.contours = std::move(cs);
        r.beta = beta;
        r.delta = delta;
        r.lhs = lhs;
        r.rhs = std::exp(-2.0 * (beta - delta) * static_cast<double>(total));
        r.tailBound = mu.tailBound;
        r.pass = r.lhs <= r.rhs;
        out.push_back(std::move(r));
    };
    for (const auto& [id, p] : single) emit({*byId[id]}, p);
    for (const auto& [ab, p] : pairs) emit({*byId[ab.first], *byId[ab.second]}, p);
    return out;
}

}  // namespace gibbslab
