#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gibbslab/kernel.hpp"
#include "gibbslab/lattice.hpp"
#include "gibbslab/spin.hpp"

namespace gibbslab {

/// Largest shape (in sites) a local function may live on by default;
/// 2^20 table entries.
inline constexpr std::size_t kDefaultShapeCap = 20;

/// Real function on {+1,-1}^shape. The table is indexed by ConfigCode over
/// the shape's sites in lexicographic order (bit k set <=> k-th site is -1).
struct LocalFunction {
    SiteSet shape;
    std::vector<double> table;

    double operator()(ConfigCode code) const { return table[code]; }
    double operator()(std::span<const Spin> spins) const;
    double supAbs() const;
    /// max - min over the table.
    double variation() const;
    bool isZero() const;
    bool isFlipSymmetric(double tol = 0.0) const;
};

/// Translation-invariant interaction on {+1,-1}^{Z^d}: a finite family of
/// local functions on anchored shapes (middle element at the origin), plus
/// an optional spin-product two-body kernel.
class Interaction {
public:
    explicit Interaction(int dim, std::size_t shapeCap = kDefaultShapeCap);

    int dim() const { return dim_; }
    std::size_t shapeCap() const { return shapeCap_; }

    /// Adds `table` on the translation class of `shape`. The shape need not
    /// be anchored; tables for an existing class are summed entrywise.
    Interaction& addLocal(const SiteSet& shape, std::vector<double> table);
    Interaction& setKernel(std::optional<TwoBodyKernel> kernel);

    const std::vector<LocalFunction>& localFunctions() const { return locals_; }
    const std::optional<TwoBodyKernel>& kernel() const { return kernel_; }
    bool hasKernel() const { return kernel_.has_value() && kernel_->amplitude != 0.0; }
    /// Local function stored for the class of `shape`, or nullptr.
    const LocalFunction* find(const SiteSet& shape) const;
    /// Largest diameter among stored shapes (0 if none).
    int maxLocalDiameter() const;

    /// Upper bound on the normAbs mass of kernel pairs dropped when a
    /// kernel was materialized into local functions.
    double discardedKernelTail() const { return discardedTail_; }
    void recordDiscardedTail(double t) { discardedTail_ += t; }

private:
    int dim_;
    std::size_t shapeCap_;
    std::vector<LocalFunction> locals_;  // sorted by anchored shape
    std::optional<TwoBodyKernel> kernel_;
    double discardedTail_ = 0.0;
};

Interaction zeroInteraction(int dim);
/// Nearest-neighbour pairs with table -beta w(x) w(y).
Interaction ising(double beta, int dim);
/// ising(beta, dim) plus singleton table -h w(x).
Interaction isingWithField(double beta, double h, int dim);
/// Kernel-only interaction c |x|^{-s}.
Interaction powerLaw(int dim, double amplitude, double exponent, int truncationRadius,
                     KernelNorm norm = KernelNorm::Inf);

/// Shape-wise sum. Kernels of the same form are merged; otherwise the
/// second operand's kernel is materialized up to its truncation radius and
/// the discarded tail recorded. Throws on dimension mismatch.
Interaction add(const Interaction& a, const Interaction& b);
Interaction scale(const Interaction& a, double t);
/// Replaces the kernel by local pair functions {0,x}, |x|_inf <= radius.
Interaction materializeKernel(const Interaction& a);

/// Entrywise comparison with missing shapes treated as zero.
bool tableEqual(const Interaction& a, const Interaction& b, double tol = 0.0);

/// Phi_Lambda(w) for w given on Lambda in lexicographic order. Unknown
/// shapes evaluate to 0; pair shapes also pick up the kernel.
double evaluate(const Interaction& phi, const SiteSet& shape, std::span<const Spin> spins);

/// Norm sums over shapes containing the origin. Kernel parts are reported
/// with a rigorous tail interval; finite parts are exact.
Interval normAbs(const Interaction& phi, double relTol = 1e-9);
Interval normDecay(const Interaction& phi, double relTol = 1e-9);
Interval normDecayPrime(const Interaction& phi, double relTol = 1e-9);
Interval normVar(const Interaction& phi, double relTol = 1e-9);

struct NormReport {
    Interval abs;
    Interval decay;
    Interval decayPrime;
    Interval var;
};
/// Computes the four norms. Divergent kernel norms throw std::domain_error.
NormReport allNorms(const Interaction& phi, double relTol = 1e-9);

bool isSpinFlipSymmetric(const Interaction& phi, double tol = 0.0);
bool isZeroOnNonL1Connected(const Interaction& phi);

/// Regroups every local function onto the rectangle hull of its shape.
/// Requires a finite-only interaction; throws std::length_error when a hull
/// exceeds the shape cap.
Interaction rectangleTransform(const Interaction& psi);

}  // namespace gibbslab
