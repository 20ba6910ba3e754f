#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gibbslab/interaction.hpp"
#include "gibbslab/lattice.hpp"
#include "gibbslab/spin.hpp"

namespace gibbslab {

/// The (d-1)-face between two nearest-neighbour cells. `inner` lies on the
/// interior side of the contour the plaquette belongs to.
struct Plaquette {
    Point inner;
    Point outer;

    /// Lower cell of the edge and the axis it crosses; identifies the face
    /// regardless of orientation.
    Point lo() const { return std::min(inner, outer); }
    int axis() const;

    friend bool operator==(const Plaquette& a, const Plaquette& b) { return a.inner == b.inner && a.outer == b.outer; }
    friend auto operator<=>(const Plaquette& a, const Plaquette& b) {
        if (auto c = a.lo() <=> b.lo(); c != 0) return c;
        if (auto c = a.axis() <=> b.axis(); c != 0) return c;
        return a.inner <=> b.inner;
    }
};

/// True when the closed faces of a and b share at least one point.
bool facesIntersect(const Plaquette& a, const Plaquette& b);

/// Boundary of the union of unit cubes around `set`, oriented with `inner`
/// in the set. Sorted.
std::vector<Plaquette> cubeBoundary(const SiteSet& set);

struct Contour {
    std::vector<Plaquette> plaquettes;  ///< sorted
    SiteSet interior;

    std::size_t size() const { return plaquettes.size(); }
    std::string str() const;

    friend bool operator==(const Contour& a, const Contour& b) {
        return a.plaquettes == b.plaquettes && a.interior == b.interior;
    }
    friend auto operator<=>(const Contour& a, const Contour& b) {
        if (auto c = a.interior <=> b.interior; c != 0) return c;
        return a.plaquettes <=> b.plaquettes;
    }
};

/// The contour whose interior is `interior`.
Contour contourOf(const SiteSet& interior);

struct ContourFamily {
    std::vector<Contour> contours;  ///< sorted
    std::size_t totalSize() const;
    bool contains(const Contour& g) const;
};

/// Sites of the volume carrying spin -1 (the configuration is +1 outside).
SiteSet minusRegion(const SpinConfiguration& omega);

/// Boundary plaquettes of the minus region grouped into components of
/// closed-face contact, each with its interior from ray parity.
ContourFamily extractContours(const SpinConfiguration& omega);

/// Negates the spins on int(gamma). Throws std::invalid_argument when gamma
/// is not a contour of omega or its interior leaves the volume.
SpinConfiguration flip(const SpinConfiguration& omega, const Contour& gamma);

/// Number of (d-1)-faces of the unit-cube tiling, other than the reference
/// face {1/2} x [-1/2,1/2]^{d-1}, that meet it.
int computeCd(int dim);

inline constexpr int kCensusMaxPerimeter = 14;

struct CensusRow {
    int n = 0;
    std::size_t count = 0;
    double bound = 0.0;  ///< (n+1) C_2^{2n+1}
    double ratio = 0.0;  ///< count / bound
};

/// Number of contours of size n whose interior contains the origin, for
/// even n up to nMax (d = 2 only).
std::vector<CensusRow> contourCensus(int dim, int nMax);

/// C_d (2q - q^2) / (1 - q)^2 with q = exp(-2 (L - log C_d)); throws
/// std::domain_error when L <= log C_d.
double epsilonOfL(double L, int dim);

struct EpsilonRow {
    double L = 0.0;
    double epsilon = 0.0;
};
/// epsilonOfL on the grid L = k * step for k with L in (log C_d, lMax].
std::vector<EpsilonRow> epsilonScan(int dim, double step, double lMax);
/// Smallest grid point of `epsilonScan` with epsilon < 1/2.
double epsilonThreshold(int dim, double step);

/// Straddling-term sum delta(Lambda, w, gamma) for the perturbation psi:
/// -sum over Delta meeting the volume, meeting int(gamma) but not inside it,
/// of psi_Delta(w) - psi_Delta(w_gamma). Requires a finite-support psi.
double deltaTerm(const Interaction& psi, const SpinConfiguration& omega, const Contour& gamma);

struct PeierlsReport {
    std::vector<Contour> contours;
    double beta = 0.0;
    double delta = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double tailBound = 0.0;
    bool pass = false;
};

/// Checks the hypotheses of the perturbed Peierls bound and returns every
/// violated one (empty when all hold).
std::vector<std::string> peierlsPreconditions(double beta, const Interaction& psi, double delta,
                                              const SiteSet& volume, const std::vector<Contour>& contours);

/// mu^+ of {gamma_1..gamma_n all in Gamma(w)} for ising(beta) + psi on the
/// volume, against exp(-2 (beta - delta) sum |gamma_i|). Throws
/// std::invalid_argument listing all violated preconditions.
PeierlsReport peierlsVerify(double beta, const Interaction& psi, double delta, const SiteSet& volume,
                            const std::vector<Contour>& contours, int truncationRadius);

/// Every single-contour event and every pair with disjoint interiors that
/// has positive probability under mu^+, checked in one sweep.
std::vector<PeierlsReport> peierlsSweep(double beta, const Interaction& psi, double delta, const SiteSet& volume,
                                        int truncationRadius);

}  // namespace gibbslab
