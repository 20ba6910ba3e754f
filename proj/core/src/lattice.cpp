#include "gibbslab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace gibbslab {

namespace {

void checkDim(int dim) {
    if (dim < 1 || dim > kMaxDimension) {
        throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDimension) +
                                    "], got " + std::to_string(dim));
    }
}

void requireSameDim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("point dimension mismatch: " + a.str() + " vs " + b.str());
    }
}

void requireNonEmpty(const SiteSet& s, const char* what) {
    if (s.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty site set");
    }
}

}  // namespace

Point::Point(int dim) : dim_(dim) { checkDim(dim); }

Point::Point(std::initializer_list<int> coords) : dim_(static_cast<std::int32_t>(coords.size())) {
    checkDim(dim_);
    std::size_t i = 0;
    for (int v : coords) c_[i++] = v;
}

Point Point::fromSpan(std::span<const int> coords) {
    Point p(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) p.c_[i] = coords[i];
    return p;
}

Point Point::unit(int dim, int axis, int sign) {
    Point p(dim);
    p[axis] = sign;
    return p;
}

Point Point::operator+(const Point& o) const {
    requireSameDim(*this, o);
    Point r(*this);
    for (int i = 0; i < dim_; ++i) r.c_[i] += o.c_[i];
    return r;
}

Point Point::operator-(const Point& o) const {
    requireSameDim(*this, o);
    Point r(*this);
    for (int i = 0; i < dim_; ++i) r.c_[i] -= o.c_[i];
    return r;
}

Point Point::operator-() const {
    Point r(*this);
    for (int i = 0; i < dim_; ++i) r.c_[i] = -r.c_[i];
    return r;
}

bool Point::isZero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int32_t v) { return v == 0; });
}

std::string Point::str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ',';
        s += std::to_string(c_[i]);
    }
    return s + ")";
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(p[i])) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
    }
    return h;
}

int norm1(const Point& x) {
    int s = 0;
    for (int i = 0; i < x.dim(); ++i) s += std::abs(x[i]);
    return s;
}

int normInf(const Point& x) {
    int m = 0;
    for (int i = 0; i < x.dim(); ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double normEuclid(const Point& x) {
    double s = 0;
    for (int i = 0; i < x.dim(); ++i) s += static_cast<double>(x[i]) * x[i];
    return std::sqrt(s);
}

// ---------------------------------------------------------------- Rectangle

std::size_t Rectangle::volume() const {
    std::size_t v = 1;
    for (int i = 0; i < dim(); ++i) v *= static_cast<std::size_t>(side(i));
    return v;
}

bool Rectangle::contains(const Point& x) const {
    if (x.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
}

std::vector<Point> Rectangle::sites() const {
    std::vector<Point> out;
    out.reserve(volume());
    Point p = lo;
    const int d = dim();
    while (true) {
        out.push_back(p);
        int axis = d - 1;
        while (axis >= 0) {
            if (p[axis] < hi[axis]) {
                ++p[axis];
                break;
            }
            p[axis] = lo[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

Rectangle Rectangle::enlarged(int margin) const {
    Rectangle r = *this;
    for (int i = 0; i < dim(); ++i) {
        r.lo[i] -= margin;
        r.hi[i] += margin;
    }
    return r;
}

Rectangle centeredBox(int dim, int n) {
    if (n < 0) throw std::invalid_argument("centeredBox: negative radius");
    Rectangle r{Point(dim), Point(dim)};
    for (int i = 0; i < dim; ++i) {
        r.lo[i] = -n;
        r.hi[i] = n;
    }
    return r;
}

Rectangle boxFromOrigin(std::span<const int> sides) {
    Rectangle r{Point(static_cast<int>(sides.size())), Point(static_cast<int>(sides.size()))};
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (sides[i] < 1) throw std::invalid_argument("boxFromOrigin: side lengths must be positive");
        r.hi[static_cast<int>(i)] = sides[i] - 1;
    }
    return r;
}

// ------------------------------------------------------------------ SiteSet

SiteSet::SiteSet(std::vector<Point> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    if (sites_.empty()) return;
    const int d = sites_.front().dim();
    hull_ = Rectangle{sites_.front(), sites_.front()};
    for (const auto& p : sites_) {
        if (p.dim() != d) throw std::invalid_argument("SiteSet: mixed dimensions");
        for (int i = 0; i < d; ++i) {
            hull_.lo[i] = std::min(hull_.lo[i], p[i]);
            hull_.hi[i] = std::max(hull_.hi[i], p[i]);
        }
    }
    // The infinity-norm diameter of a set equals the longest hull side.
    diameter_ = 0;
    for (int i = 0; i < d; ++i) diameter_ = std::max(diameter_, hull_.hi[i] - hull_.lo[i]);
}

SiteSet::SiteSet(std::initializer_list<Point> sites) : SiteSet(std::vector<Point>(sites)) {}

SiteSet SiteSet::fromRectangle(const Rectangle& r) { return SiteSet(r.sites()); }

bool SiteSet::contains(const Point& x) const { return std::binary_search(sites_.begin(), sites_.end(), x); }

std::ptrdiff_t SiteSet::indexOf(const Point& x) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), x);
    if (it == sites_.end() || *it != x) return -1;
    return it - sites_.begin();
}

bool SiteSet::isSubsetOf(const SiteSet& other) const {
    return std::includes(other.sites_.begin(), other.sites_.end(), sites_.begin(), sites_.end());
}

bool SiteSet::intersects(const SiteSet& other) const {
    auto a = sites_.begin();
    auto b = other.sites_.begin();
    while (a != sites_.end() && b != other.sites_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

int SiteSet::diameter() const {
    requireNonEmpty(*this, "diameter");
    return diameter_;
}

const Rectangle& SiteSet::boundingRectangle() const {
    requireNonEmpty(*this, "boundingRectangle");
    return hull_;
}

std::string SiteSet::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (i) s += ",";
        s += sites_[i].str();
    }
    return s + "}";
}

std::size_t SiteSetHash::operator()(const SiteSet& s) const noexcept {
    std::size_t h = s.size();
    PointHash ph;
    for (const auto& p : s) h ^= ph(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

int diameter(const SiteSet& set) { return set.diameter(); }

SiteSet translate(const SiteSet& set, const Point& shift) {
    std::vector<Point> pts;
    pts.reserve(set.size());
    for (const auto& p : set) pts.push_back(p + shift);
    return SiteSet(std::move(pts));
}

SiteSet setUnion(const SiteSet& a, const SiteSet& b) {
    std::vector<Point> pts(a.points());
    pts.insert(pts.end(), b.begin(), b.end());
    return SiteSet(std::move(pts));
}

SiteSet setDifference(const SiteSet& a, const SiteSet& b) {
    std::vector<Point> pts;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(pts));
    return SiteSet(std::move(pts));
}

void forEachLInfOffset(int dim, const std::function<void(const Point&)>& fn) {
    Point off(dim);
    for (int i = 0; i < dim; ++i) off[i] = -1;
    while (true) {
        if (!off.isZero()) fn(off);
        int axis = dim - 1;
        while (axis >= 0) {
            if (off[axis] < 1) {
                ++off[axis];
                break;
            }
            off[axis] = -1;
            --axis;
        }
        if (axis < 0) return;
    }
}

namespace {

template <class NeighbourFn>
bool connectedUnder(const SiteSet& set, NeighbourFn&& forEachNeighbour) {
    if (set.empty()) return true;
    std::vector<char> seen(set.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        forEachNeighbour(set[i], [&](const Point& q) {
            const auto j = set.indexOf(q);
            if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                ++reached;
                queue.push_back(static_cast<std::size_t>(j));
            }
        });
    }
    return reached == set.size();
}

}  // namespace

bool isL1Connected(const SiteSet& set) {
    requireNonEmpty(set, "isL1Connected");
    const int d = set.dim();
    return connectedUnder(set, [d](const Point& p, auto&& visit) {
        for (int axis = 0; axis < d; ++axis) {
            visit(p + Point::unit(d, axis, 1));
            visit(p + Point::unit(d, axis, -1));
        }
    });
}

bool isLInfConnected(const SiteSet& set) {
    requireNonEmpty(set, "isLInfConnected");
    const int d = set.dim();
    return connectedUnder(set, [d](const Point& p, auto&& visit) {
        forEachLInfOffset(d, [&](const Point& off) { visit(p + off); });
    });
}

bool isCConnected(const SiteSet& set) {
    requireNonEmpty(set, "isCConnected");
    if (!isLInfConnected(set)) return false;

    // Complement cells inside hull+1. Every cell on the enlarged frontier
    // lies outside the set and belongs to the single unbounded component;
    // any complement cell not reached from there is enclosed.
    const Rectangle box = set.boundingRectangle().enlarged(1);
    const int d = set.dim();
    const auto cells = box.sites();
    auto offsetOf = [&](const Point& p) {
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            idx = idx * static_cast<std::size_t>(box.side(i)) + static_cast<std::size_t>(p[i] - box.lo[i]);
        }
        return idx;
    };
    std::vector<char> state(cells.size(), 0);  // 0 free complement, 1 in set, 2 reached
    for (const auto& p : set) state[offsetOf(p)] = 1;

    std::deque<Point> queue;
    std::size_t complement = 0;
    for (const auto& p : cells) {
        if (state[offsetOf(p)] == 1) continue;
        ++complement;
        bool frontier = false;
        for (int i = 0; i < d; ++i) frontier = frontier || p[i] == box.lo[i] || p[i] == box.hi[i];
        if (frontier) {
            state[offsetOf(p)] = 2;
            queue.push_back(p);
        }
    }
    std::size_t reached = queue.size();
    while (!queue.empty()) {
        const Point p = queue.front();
        queue.pop_front();
        forEachLInfOffset(d, [&](const Point& off) {
            const Point q = p + off;
            if (!box.contains(q)) return;
            auto& st = state[offsetOf(q)];
            if (st == 0) {
                st = 2;
                ++reached;
                queue.push_back(q);
            }
        });
    }
    return reached == complement;
}

Rectangle rectangleHull(const SiteSet& set) { return set.boundingRectangle(); }

const Point& middleElement(const SiteSet& set) {
    requireNonEmpty(set, "middleElement");
    return set[(set.size() + 1) / 2 - 1];
}

AnchoredSet canonicalAnchor(const SiteSet& set) {
    const Point mid = middleElement(set);
    return AnchoredSet{translate(set, -mid), mid};
}

}  // namespace gibbslab
