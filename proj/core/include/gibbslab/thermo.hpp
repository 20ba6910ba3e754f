#pragma once

#include <cstddef>
#include <string>

#include "gibbslab/gibbs.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/interaction.hpp"

namespace gibbslab {

/// I.i.d. spins with P(w(x) = +1) = p.
struct ProductMeasure {
    double p = 0.5;

    explicit ProductMeasure(double p = 0.5);
    double magnetization() const { return 2.0 * p - 1.0; }
};

/// Binary entropy -p log p - (1-p) log(1-p).
double entropyRate(const ProductMeasure& mu);

/// Per-site Shannon entropy of a distribution on {+1,-1}^sites, with
/// 0 log 0 = 0.
double entropyEstimate(const Distribution& dist);

/// The product measure restricted to `sites`.
Distribution productMarginal(const ProductMeasure& mu, const SiteSet& sites);

struct PressureReport {
    int n = 0;                ///< B(n) = {-n..n}^d
    std::size_t sites = 0;
    double logZ = 0.0;
    double perSiteLogZ = 0.0;
    double tailBoundPerSite = 0.0;
    std::string boundary = "free";
};

/// (1/|B(n)|) log Z with free boundary condition.
PressureReport pressureEstimate(const Interaction& phi, int n, int truncationRadius, EnumerationOptions opts = {});

/// Integral of A_Phi against the product measure.
EnergyValue aPhiIntegralProduct(const Interaction& phi, const ProductMeasure& mu, int truncationRadius);

struct VariationalReport {
    double p = 0.0;
    double F = 0.0;   ///< entropyRate + integral of A_Phi
    double Pn = 0.0;  ///< finite-volume pressure on B(n)
    /// Kernel slack on F plus the per-site tail of Pn.
    double slack = 0.0;
    double gap() const { return Pn - F; }
};

VariationalReport variationalGap(const Interaction& phi, const ProductMeasure& mu, int n, int truncationRadius,
                                 EnumerationOptions opts = {});

struct LipschitzReport {
    double delta = 0.0;  ///< |log Z(phi0 + psi) - log Z(phi0)| / |B(n)|
    double bound = 0.0;  ///< normAbs(psi)
    bool pass = false;
};

/// Finite-volume pressure perturbation bound; psi must be finite-support.
LipschitzReport pressureLipschitzCheck(const Interaction& phi0, const Interaction& psi, int n, int truncationRadius,
                                       EnumerationOptions opts = {});

}  // namespace gibbslab
