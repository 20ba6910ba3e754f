#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gibbslab {

inline constexpr int kMaxDimension = 4;

/// A site of Z^d. Coordinates past `dim()` are kept at zero so that the
/// defaulted comparison is the lexicographic order on the first d entries.
class Point {
public:
    Point() = default;
    explicit Point(int dim);
    Point(std::initializer_list<int> coords);
    static Point fromSpan(std::span<const int> coords);
    static Point unit(int dim, int axis, int sign = 1);

    int dim() const { return dim_; }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    Point operator+(const Point& o) const;
    Point operator-(const Point& o) const;
    Point operator-() const;

    bool isZero() const;
    std::string str() const;

    friend auto operator<=>(const Point&, const Point&) = default;
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::array<std::int32_t, kMaxDimension> c_{};
    std::int32_t dim_ = 0;
};

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept;
};

int norm1(const Point& x);
int normInf(const Point& x);
double normEuclid(const Point& x);

/// Axis-aligned box [lo_1,hi_1] x ... x [lo_d,hi_d] of lattice sites.
struct Rectangle {
    Point lo;
    Point hi;

    int dim() const { return lo.dim(); }
    std::size_t volume() const;
    bool contains(const Point& x) const;
    int side(int axis) const { return hi[axis] - lo[axis] + 1; }
    /// All sites in lexicographic order.
    std::vector<Point> sites() const;
    Rectangle enlarged(int margin) const;

    friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Centered box B(n) = {-n..n}^d.
Rectangle centeredBox(int dim, int n);
/// Box with the given side lengths anchored at the origin.
Rectangle boxFromOrigin(std::span<const int> sides);

/// Finite set of sites, stored sorted in lexicographic order without
/// duplicates. The diameter and bounding rectangle are cached on
/// construction; an empty set has neither.
class SiteSet {
public:
    SiteSet() = default;
    explicit SiteSet(std::vector<Point> sites);
    SiteSet(std::initializer_list<Point> sites);
    static SiteSet fromRectangle(const Rectangle& r);

    bool empty() const { return sites_.empty(); }
    std::size_t size() const { return sites_.size(); }
    int dim() const { return sites_.empty() ? 0 : sites_.front().dim(); }
    const Point& operator[](std::size_t i) const { return sites_[i]; }
    const std::vector<Point>& points() const { return sites_; }
    auto begin() const { return sites_.begin(); }
    auto end() const { return sites_.end(); }

    bool contains(const Point& x) const;
    /// Position of x in lexicographic order, or -1.
    std::ptrdiff_t indexOf(const Point& x) const;
    bool isSubsetOf(const SiteSet& other) const;
    bool intersects(const SiteSet& other) const;

    /// Cached values; throw std::invalid_argument on an empty set.
    int diameter() const;
    const Rectangle& boundingRectangle() const;

    std::string str() const;

    friend bool operator==(const SiteSet& a, const SiteSet& b) { return a.sites_ == b.sites_; }
    friend auto operator<=>(const SiteSet& a, const SiteSet& b) { return a.sites_ <=> b.sites_; }

private:
    std::vector<Point> sites_;
    int diameter_ = 0;
    Rectangle hull_{};
};

struct SiteSetHash {
    std::size_t operator()(const SiteSet& s) const noexcept;
};

int diameter(const SiteSet& set);
SiteSet translate(const SiteSet& set, const Point& shift);
SiteSet setUnion(const SiteSet& a, const SiteSet& b);
SiteSet setDifference(const SiteSet& a, const SiteSet& b);

bool isL1Connected(const SiteSet& set);
bool isLInfConnected(const SiteSet& set);
/// Both the set and its complement in Z^d are connected under
/// infinity-norm adjacency.
bool isCConnected(const SiteSet& set);

Rectangle rectangleHull(const SiteSet& set);
/// The floor((|set|+1)/2)-th element in lexicographic order (1-based).
const Point& middleElement(const SiteSet& set);

struct AnchoredSet {
    SiteSet set;   ///< translated copy whose middle element is the origin
    Point shift;   ///< the original middle element
};
AnchoredSet canonicalAnchor(const SiteSet& set);

/// Calls `fn` for each of the 3^d - 1 infinity-norm neighbours offsets.
void forEachLInfOffset(int dim, const std::function<void(const Point&)>& fn);

}  // namespace gibbslab
