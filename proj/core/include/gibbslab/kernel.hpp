#pragma once

#include <string>

#include "gibbslab/lattice.hpp"

namespace gibbslab {

/// Closed interval [lo, hi] enclosing a quantity computed with a rigorous
/// truncation bound. Exact quantities have lo == hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval exact(double v) { return {v, v}; }
    double width() const { return hi - lo; }
    bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval& operator+=(const Interval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    Interval operator*(double k) const { return k >= 0 ? Interval{lo * k, hi * k} : Interval{hi * k, lo * k}; }
};

enum class KernelNorm { Inf, Euclid };

std::string toString(KernelNorm n);
KernelNorm kernelNormFromString(const std::string& s);

/// Two-body coupling J(x) = c * |x|^{-s} acting as -J(x-y) w(x) w(y) on every
/// pair {x, y}. Hamiltonians keep pairs up to `truncationRadius` in the
/// infinity norm and account for the rest with tail bounds.
struct TwoBodyKernel {
    double amplitude = 0.0;
    double exponent = 0.0;
    KernelNorm norm = KernelNorm::Inf;
    int truncationRadius = 1;

    double coupling(const Point& displacement) const;
    /// True when both kernels describe the same functional form and range,
    /// so their amplitudes can be added.
    bool sameForm(const TwoBodyKernel& o) const {
        return exponent == o.exponent && norm == o.norm && truncationRadius == o.truncationRadius;
    }
    friend bool operator==(const TwoBodyKernel&, const TwoBodyKernel&) = default;
};

/// Throws std::invalid_argument unless s > d, c is finite and the
/// truncation radius is positive.
void validateKernel(const TwoBodyKernel& k, int dim);

/// Weight attached to each pair {0, x} in a shell sum:
/// factor * (|x|_inf + 1)^diamPower.
struct ShellWeight {
    double factor = 1.0;
    int diamPower = 0;
};

/// Sum over x != 0 with |x|_inf >= fromShell of weight(|x|_inf) * |J(x)|.
/// The series is accumulated shell by shell until an integral-comparison
/// remainder bound drops below relTol times the partial sum (or a shell cap
/// is hit); the remainder is folded into the upper end of the interval.
/// Throws std::domain_error when the weighted series diverges.
Interval kernelShellSum(const TwoBodyKernel& k, int dim, ShellWeight w, int fromShell, double relTol);

/// Upper bound on sum_{|x|_inf > radius} |J(x)|.
double kernelTailBound(const TwoBodyKernel& k, int dim, int radius, double relTol = 1e-9);

/// Number of sites with |x|_inf == n in Z^d.
double shellCount(int dim, int n);

/// Calls fn for every x with |x|_inf == n.
template <class Fn>
void forEachShellPoint(int dim, int n, Fn&& fn);

}  // namespace gibbslab

#include "gibbslab/detail/shell_points.hpp"
