#include "gibbslab/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gibbslab {

namespace {

void requireSameDim(const Interaction& a, const Interaction& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("interaction dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()));
    }
}

ConfigCode codeOf(std::span<const Spin> spins) {
    ConfigCode c = 0;
    for (std::size_t k = 0; k < spins.size(); ++k) c |= bitOfSpin(spins[k]) << k;
    return c;
}

double powi(double b, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

// ------------------------------------------------------------ LocalFunction

double LocalFunction::operator()(std::span<const Spin> spins) const { return table[codeOf(spins)]; }

double LocalFunction::supAbs() const {
    double m = 0;
    for (double v : table) m = std::max(m, std::fabs(v));
    return m;
}

double LocalFunction::variation() const {
    if (table.empty()) return 0;
    const auto [lo, hi] = std::minmax_element(table.begin(), table.end());
    return *hi - *lo;
}

bool LocalFunction::isZero() const {
    return std::all_of(table.begin(), table.end(), [](double v) { return v == 0.0; });
}

bool LocalFunction::isFlipSymmetric(double tol) const {
    const ConfigCode mask = table.size() - 1;
    for (ConfigCode c = 0; c < table.size(); ++c) {
        if (std::fabs(table[c] - table[~c & mask]) > tol) return false;
    }
    return true;
}

// -------------------------------------------------------------- Interaction

Interaction::Interaction(int dim, std::size_t shapeCap) : dim_(dim), shapeCap_(shapeCap) {
    if (dim < 1 || dim > kMaxDimension) throw std::invalid_argument("interaction dimension out of range");
}

Interaction& Interaction::addLocal(const SiteSet& shape, std::vector<double> table) {
    if (shape.empty()) throw std::invalid_argument("addLocal: empty shape");
    if (shape.dim() != dim_) throw std::invalid_argument("addLocal: shape dimension mismatch");
    if (shape.size() > shapeCap_) {
        throw std::length_error("addLocal: shape of " + std::to_string(shape.size()) + " sites exceeds cap " +
                                std::to_string(shapeCap_));
    }
    if (table.size() != (std::size_t{1} << shape.size())) {
        throw std::invalid_argument("addLocal: table must have 2^|shape| entries");
    }
    for (double v : table) {
        if (!std::isfinite(v)) throw std::invalid_argument("addLocal: non-finite table entry");
    }
    SiteSet anchored = canonicalAnchor(shape).set;
    auto it = std::lower_bound(locals_.begin(), locals_.end(), anchored,
                               [](const LocalFunction& f, const SiteSet& s) { return f.shape < s; });
    if (it != locals_.end() && it->shape == anchored) {
        for (std::size_t i = 0; i < table.size(); ++i) it->table[i] += table[i];
    } else {
        locals_.insert(it, LocalFunction{std::move(anchored), std::move(table)});
    }
    return *this;
}

Interaction& Interaction::setKernel(std::optional<TwoBodyKernel> kernel) {
    if (kernel) validateKernel(*kernel, dim_);
    kernel_ = std::move(kernel);
    return *this;
}

const LocalFunction* Interaction::find(const SiteSet& shape) const {
    if (shape.empty() || shape.dim() != dim_) return nullptr;
    const SiteSet anchored = canonicalAnchor(shape).set;
    auto it = std::lower_bound(locals_.begin(), locals_.end(), anchored,
                               [](const LocalFunction& f, const SiteSet& s) { return f.shape < s; });
    return (it != locals_.end() && it->shape == anchored) ? &*it : nullptr;
}

int Interaction::maxLocalDiameter() const {
    int m = 0;
    for (const auto& f : locals_) m = std::max(m, f.shape.diameter());
    return m;
}

// ----------------------------------------------------------------- builders

Interaction zeroInteraction(int dim) { return Interaction(dim); }

Interaction ising(double beta, int dim) {
    Interaction phi(dim);
    for (int axis = 0; axis < dim; ++axis) {
        // codes over (0, e_axis): ++, -+, +-, --
        phi.addLocal(SiteSet{Point(dim), Point::unit(dim, axis)}, {-beta, beta, beta, -beta});
    }
    return phi;
}

Interaction isingWithField(double beta, double h, int dim) {
    Interaction phi = ising(beta, dim);
    phi.addLocal(SiteSet{Point(dim)}, {-h, h});
    return phi;
}

Interaction powerLaw(int dim, double amplitude, double exponent, int truncationRadius, KernelNorm norm) {
    Interaction phi(dim);
    phi.setKernel(TwoBodyKernel{amplitude, exponent, norm, truncationRadius});
    return phi;
}

Interaction materializeKernel(const Interaction& a) {
    Interaction out(a.dim(), a.shapeCap());
    for (const auto& f : a.localFunctions()) out.addLocal(f.shape, f.table);
    out.recordDiscardedTail(a.discardedKernelTail());
    if (!a.kernel()) return out;
    const TwoBodyKernel& k = *a.kernel();
    const Point origin(a.dim());
    for (int n = 1; n <= k.truncationRadius; ++n) {
        forEachShellPoint(a.dim(), n, [&](const Point& x) {
            if (!(origin < x)) return;  // one representative {0,x} per class
            const double J = k.coupling(x);
            out.addLocal(SiteSet{origin, x}, {-J, J, J, -J});
        });
    }
    if (k.amplitude != 0.0) {
        out.recordDiscardedTail(kernelTailBound(k, a.dim(), k.truncationRadius));
    }
    return out;
}

Interaction add(const Interaction& a, const Interaction& b) {
    requireSameDim(a, b);
    Interaction out(a.dim(), std::max(a.shapeCap(), b.shapeCap()));
    out.recordDiscardedTail(a.discardedKernelTail() + b.discardedKernelTail());
    for (const auto& f : a.localFunctions()) out.addLocal(f.shape, f.table);
    for (const auto& f : b.localFunctions()) out.addLocal(f.shape, f.table);
    const auto& ka = a.kernel();
    const auto& kb = b.kernel();
    if (ka && kb) {
        if (ka->sameForm(*kb)) {
            TwoBodyKernel merged = *ka;
            merged.amplitude += kb->amplitude;
            out.setKernel(merged);
        } else {
            out.setKernel(ka);
            Interaction kernelOnly(b.dim(), b.shapeCap());
            kernelOnly.setKernel(kb);
            const Interaction mat = materializeKernel(kernelOnly);
            for (const auto& f : mat.localFunctions()) out.addLocal(f.shape, f.table);
            out.recordDiscardedTail(mat.discardedKernelTail());
        }
    } else if (ka) {
        out.setKernel(ka);
    } else if (kb) {
        out.setKernel(kb);
    }
    return out;
}

Interaction scale(const Interaction& a, double t) {
    Interaction out(a.dim(), a.shapeCap());
    for (const auto& f : a.localFunctions()) {
        std::vector<double> tab(f.table);
        for (double& v : tab) v *= t;
        out.addLocal(f.shape, std::move(tab));
    }
    if (a.kernel()) {
        TwoBodyKernel k = *a.kernel();
        k.amplitude *= t;
        out.setKernel(k);
    }
    out.recordDiscardedTail(std::fabs(t) * a.discardedKernelTail());
    return out;
}

bool tableEqual(const Interaction& a, const Interaction& b, double tol) {
    if (a.dim() != b.dim()) return false;
    const bool ka = a.hasKernel();
    const bool kb = b.hasKernel();
    if (ka != kb) return false;
    if (ka && !(*a.kernel() == *b.kernel())) return false;
    auto covered = [tol](const Interaction& x, const Interaction& y) {
        for (const auto& f : x.localFunctions()) {
            const LocalFunction* g = y.find(f.shape);
            for (std::size_t i = 0; i < f.table.size(); ++i) {
                const double other = g ? g->table[i] : 0.0;
                if (std::fabs(f.table[i] - other) > tol) return false;
            }
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

double evaluate(const Interaction& phi, const SiteSet& shape, std::span<const Spin> spins) {
    if (spins.size() != shape.size()) throw std::invalid_argument("evaluate: spins must cover the shape exactly");
    if (shape.empty()) return 0.0;
    double v = 0.0;
    if (const LocalFunction* f = phi.find(shape)) v += (*f)(spins);
    if (phi.hasKernel() && shape.size() == 2) {
        v += -phi.kernel()->coupling(shape[1] - shape[0]) * spins[0] * spins[1];
    }
    return v;
}

// -------------------------------------------------------------------- norms

namespace {

// Each anchored class with shape S contributes |S| translates containing 0.
template <class PerShape>
Interval normSum(const Interaction& phi, PerShape&& perShape, ShellWeight kernelWeight, double relTol) {
    Interval total;
    for (const auto& f : phi.localFunctions()) total += Interval::exact(perShape(f));
    if (phi.hasKernel()) total += kernelShellSum(*phi.kernel(), phi.dim(), kernelWeight, 1, relTol);
    return total;
}

}  // namespace

Interval normAbs(const Interaction& phi, double relTol) {
    return normSum(
        phi, [](const LocalFunction& f) { return static_cast<double>(f.shape.size()) * f.supAbs(); },
        ShellWeight{1.0, 0}, relTol);
}

Interval normDecay(const Interaction& phi, double relTol) {
    const int d = phi.dim();
    return normSum(
        phi,
        [d](const LocalFunction& f) {
            return static_cast<double>(f.shape.size()) * powi(f.shape.diameter() + 1.0, d) * f.supAbs();
        },
        ShellWeight{1.0, d}, relTol);
}

Interval normDecayPrime(const Interaction& phi, double relTol) {
    const int d = phi.dim();
    return normSum(
        phi, [d](const LocalFunction& f) { return powi(f.shape.diameter() + 1.0, d) * f.supAbs(); },
        ShellWeight{0.5, d}, relTol);
}

Interval normVar(const Interaction& phi, double relTol) {
    // A pair {0,x} has (|S|-1) var = 2|J(x)|.
    return normSum(
        phi,
        [](const LocalFunction& f) {
            const double n = static_cast<double>(f.shape.size());
            return n * (n - 1.0) * f.variation();
        },
        ShellWeight{2.0, 0}, relTol);
}

NormReport allNorms(const Interaction& phi, double relTol) {
    return NormReport{normAbs(phi, relTol), normDecay(phi, relTol), normDecayPrime(phi, relTol),
                      normVar(phi, relTol)};
}

// --------------------------------------------------------------- predicates

bool isSpinFlipSymmetric(const Interaction& phi, double tol) {
    return std::all_of(phi.localFunctions().begin(), phi.localFunctions().end(),
                       [tol](const LocalFunction& f) { return f.isFlipSymmetric(tol); });
}

bool isZeroOnNonL1Connected(const Interaction& phi) {
    if (phi.hasKernel()) return false;
    return std::all_of(phi.localFunctions().begin(), phi.localFunctions().end(),
                       [](const LocalFunction& f) { return f.isZero() || isL1Connected(f.shape); });
}

// ---------------------------------------------------- rectangle transform

Interaction rectangleTransform(const Interaction& psi) {
    if (psi.hasKernel()) {
        throw std::invalid_argument("rectangleTransform: materialize the kernel part first");
    }
    std::map<SiteSet, std::vector<double>> byRect;
    for (const auto& f : psi.localFunctions()) {
        const SiteSet rect = SiteSet::fromRectangle(rectangleHull(f.shape));
        if (rect.size() > psi.shapeCap()) {
            throw std::length_error("rectangleTransform: hull of " + f.shape.str() + " has " +
                                    std::to_string(rect.size()) + " sites, over the cap " +
                                    std::to_string(psi.shapeCap()));
        }
        const AnchoredSet anchoredRect = canonicalAnchor(rect);
        // position of each shape site inside the rectangle's lex order
        std::vector<std::size_t> pos(f.shape.size());
        for (std::size_t k = 0; k < f.shape.size(); ++k) {
            pos[k] = static_cast<std::size_t>(rect.indexOf(f.shape[k]));
        }
        auto& table = byRect[anchoredRect.set];
        table.resize(std::size_t{1} << rect.size(), 0.0);
        for (ConfigCode c = 0; c < table.size(); ++c) {
            ConfigCode sub = 0;
            for (std::size_t k = 0; k < pos.size(); ++k) sub |= ((c >> pos[k]) & 1u) << k;
            table[c] += f.table[sub];
        }
    }
    Interaction out(psi.dim(), psi.shapeCap());
    out.recordDiscardedTail(psi.discardedKernelTail());
    for (auto& [shape, table] : byRect) out.addLocal(shape, std::move(table));
    return out;
}

}  // namespace gibbslab
