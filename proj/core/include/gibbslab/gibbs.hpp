#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gibbslab/boundary.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/interaction.hpp"

namespace gibbslab {

inline constexpr std::size_t kDefaultEnumerationCap = 20;
/// Largest volume a full probability table may be built for.
inline constexpr std::size_t kHardEnumerationCap = 24;
/// Largest volume a streamed partition function may be computed for.
inline constexpr std::size_t kStreamingHardCap = 26;

struct EnumerationOptions {
    /// Lifts the cap from kDefaultEnumerationCap to the hard cap.
    bool allowLargeVolume = false;
};

/// Probability table over {+1,-1}^sites, indexed by ConfigCode.
struct Distribution {
    SiteSet sites;
    std::vector<double> probs;

    double total() const;
};

/// Pushforward of `dist` onto `subset`. Throws if subset is not contained
/// in dist.sites.
Distribution marginal(const Distribution& dist, const SiteSet& subset);

/// Exact finite-volume Gibbs state: every configuration of the volume with
/// its log weight -H and the log partition function.
struct FiniteGibbsState {
    SiteSet volume;
    BoundaryCondition boundary;
    std::vector<double> logWeights;
    double logZ = 0.0;
    int truncationRadius = 0;
    /// Bound on |H_exact - H_truncated|, uniform over configurations.
    double tailBound = 0.0;

    double probability(ConfigCode code) const;
    Distribution distribution() const;
};

/// Enumerates all 2^|volume| configurations. Plus/Minus/Explicit boundaries
/// sum every term meeting the volume; Free sums terms inside the volume.
FiniteGibbsState buildGibbs(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc,
                            int truncationRadius, EnumerationOptions opts = {});

double probability(const FiniteGibbsState& mu, const std::function<bool(ConfigCode)>& event);
/// Expectation of w(x); throws std::invalid_argument if x is off the volume.
double siteMagnetization(const FiniteGibbsState& mu, const Point& x);
Distribution marginal(const FiniteGibbsState& mu, const SiteSet& subset);

struct LogPartition {
    double logZ = 0.0;
    double tailBound = 0.0;
};

/// log Z computed without storing the table (up to kStreamingHardCap
/// sites with allowLargeVolume).
LogPartition logPartitionFunction(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc,
                                  int truncationRadius, EnumerationOptions opts = {});

/// Max over boundary patterns sigma on volume \ inner of the pointwise gap
/// between the conditional of mu^bc_volume on `inner` given sigma and the
/// Gibbs state on `inner` with boundary sigma v bc.
double dlrCheck(const Interaction& phi, const SiteSet& volume, const SiteSet& inner, const BoundaryCondition& bc,
                int truncationRadius);

/// Max pointwise gap between the Gibbs states of phi0 + psi and of
/// phi0 + rectangleTransform(psi) on the same volume and boundary.
double gibbsEquivalenceCheck(const Interaction& phi0, const Interaction& psi, const SiteSet& volume,
                             const BoundaryCondition& bc, int truncationRadius);

/// Max pointwise gap between two states on the same volume.
double maxPointwiseDeviation(const FiniteGibbsState& a, const FiniteGibbsState& b);

}  // namespace gibbslab
