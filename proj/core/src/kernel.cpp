#include "gibbslab/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace gibbslab {

namespace {

// Shells up to which the infinity-norm series is summed in closed shell
// form, and the number of lattice points the Euclidean series may visit
// before falling back on the remainder bound.
constexpr int kMaxInfShells = 1 << 22;
constexpr double kMaxEuclidPoints = 4.0e6;

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

std::string toString(KernelNorm n) { return n == KernelNorm::Inf ? "inf" : "euclid"; }

KernelNorm kernelNormFromString(const std::string& s) {
    if (s == "inf") return KernelNorm::Inf;
    if (s == "euclid") return KernelNorm::Euclid;
    throw std::invalid_argument("unknown kernel norm '" + s + "' (expected inf or euclid)");
}

double TwoBodyKernel::coupling(const Point& x) const {
    const double r = norm == KernelNorm::Inf ? static_cast<double>(normInf(x)) : normEuclid(x);
    return amplitude * std::pow(r, -exponent);
}

void validateKernel(const TwoBodyKernel& k, int dim) {
    if (!std::isfinite(k.amplitude)) throw std::invalid_argument("kernel amplitude must be finite");
    if (!(k.exponent > dim)) {
        throw std::invalid_argument("kernel exponent s=" + std::to_string(k.exponent) +
                                    " must exceed the dimension d=" + std::to_string(dim));
    }
    if (k.truncationRadius < 1) throw std::invalid_argument("kernel truncation radius must be positive");
}

double shellCount(int dim, int n) {
    if (n == 0) return 1.0;
    return ipow(2.0 * n + 1, dim) - ipow(2.0 * n - 1, dim);
}

Interval kernelShellSum(const TwoBodyKernel& k, int dim, ShellWeight w, int fromShell, double relTol) {
    validateKernel(k, dim);
    const double c = std::fabs(k.amplitude);
    const double s = k.exponent;
    // term(n) <= A n^{-p}: shell size <= 2d 3^{d-1} n^{d-1}, (n+1)^m <= 2^m n^m,
    // and the Euclidean norm dominates the infinity norm.
    const double p = s - (dim - 1) - w.diamPower;
    if (!(p > 1.0)) {
        throw std::domain_error("kernel series diverges: exponent " + std::to_string(s) +
                                " too small for weight order " + std::to_string(w.diamPower) + " in d=" +
                                std::to_string(dim));
    }
    if (c == 0.0 || w.factor == 0.0) return {};
    const double A = std::fabs(w.factor) * c * 2.0 * dim * ipow(3.0, dim - 1) * ipow(2.0, w.diamPower);
    auto remainderAfter = [&](int lastShell) { return A * std::pow(lastShell, 1.0 - p) / (p - 1.0); };

    int n = std::max(fromShell, 1);
    double partial = 0.0;
    double visited = 0.0;
    while (true) {
        const double weight = std::fabs(w.factor) * ipow(n + 1.0, w.diamPower);
        if (k.norm == KernelNorm::Inf) {
            partial += shellCount(dim, n) * weight * c * std::pow(static_cast<double>(n), -s);
        } else {
            double shell = 0.0;
            forEachShellPoint(dim, n, [&](const Point& x) { shell += std::pow(normEuclid(x), -s); });
            partial += weight * c * shell;
            visited += shellCount(dim, n);
        }
        const double rem = remainderAfter(n);
        const bool capped = k.norm == KernelNorm::Inf ? n >= kMaxInfShells : visited >= kMaxEuclidPoints;
        if (rem <= relTol * partial || capped) return {partial, partial + rem};
        ++n;
    }
}

double kernelTailBound(const TwoBodyKernel& k, int dim, int radius, double relTol) {
    return kernelShellSum(k, dim, ShellWeight{1.0, 0}, radius + 1, relTol).hi;
}

}  // namespace gibbslab
