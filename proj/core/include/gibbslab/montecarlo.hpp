#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/boundary.hpp"
#include "gibbslab/hamiltonian.hpp"
#include "gibbslab/interaction.hpp"
#include "gibbslab/lattice.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/spin.hpp"

namespace gibbslab {

enum class InitialState { BoundaryAligned, Plus, Minus, Explicit };
std::string toString(InitialState s);
InitialState initialStateFromString(const std::string& s);

struct ChainConfig {
    std::string interactionId;
    Rectangle volume;
    BoundaryCondition boundary = BoundaryCondition::plus();
    int truncationRadius = 1;
    std::uint64_t seed = 1;
    long sweeps = 1000;
    long burnIn = 100;
    long thinning = 1;
    InitialState init = InitialState::BoundaryAligned;
    std::vector<Spin> initialSpins;  ///< Explicit only, lexicographic order

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
    SpinConfiguration initialConfiguration() const;
};

/// Heat-bath sampler for mu^bc on a finite volume. The Hamiltonian is
/// split into per-site fields, pair couplings and higher-order terms;
/// pair fields are cached and updated when a spin flips.
class GlauberSampler {
public:
    GlauberSampler(const Interaction& phi, const SiteSet& volume, const BoundaryCondition& bc, int truncationRadius,
                   SpinConfiguration initial);

    const SpinConfiguration& state() const { return state_; }
    std::size_t size() const { return state_.size(); }

    /// P(w(x_i) = +1 | all other spins).
    double conditionalPlus(std::size_t i) const;
    /// Sets site i to +1 iff u < conditionalPlus(i).
    void update(std::size_t i, double u);
    /// One lexicographic sweep. With `mirrored` the uniforms are replaced
    /// by 1 - u, which couples a run to its spin-flipped partner.
    void sweep(Rng& rng, bool mirrored = false);

    /// Energy of the current state, boundary terms included.
    double energy() const { return hamiltonian_.energy(state_); }
    double tailBound() const { return hamiltonian_.tailBound(); }

private:
    struct Higher {
        std::vector<std::uint32_t> sites;
        double coefficient;
    };

    void refreshFields();

    CompiledHamiltonian hamiltonian_;
    SpinConfiguration state_;
    std::vector<double> field_;   // Walsh order-1 coefficients
    std::vector<std::vector<std::pair<std::uint32_t, double>>> couplings_;
    std::vector<Higher> higher_;
    std::vector<std::vector<std::uint32_t>> higherBySite_;
    std::vector<double> local_;   // field_ + sum_j J_ij w_j
    long updatesSinceRefresh_ = 0;
};

/// Performs a single heat-bath update at `site` with uniform u.
void glauberStep(GlauberSampler& sampler, const Point& site, double u);

struct MagnetizationEstimate {
    Point site;
    double mean = 0.0;
    double standardError = 0.0;
    long samples = 0;
    int batches = 0;
};

struct TrajectoryRow {
    long sweep = 0;
    double energyPerSite = 0.0;
    double magnetization = 0.0;  ///< per site
};

inline constexpr int kBatchCount = 20;

/// Mean and batch-means standard error (kBatchCount batches).
MagnetizationEstimate batchMeans(const std::vector<double>& samples, const Point& site);

/// Time average of w(site) after burn-in, every `thinning` sweeps.
MagnetizationEstimate magnetization(const Interaction& phi, const ChainConfig& config, const Point& site,
                                    std::vector<TrajectoryRow>* trajectory = nullptr);

struct CoexistenceReport {
    Point site;
    double mPlus = 0.0;
    double mMinus = 0.0;
    double gap = 0.0;
    double sePlus = 0.0;
    double seMinus = 0.0;
    double seGap = 0.0;
    bool symmetric = true;
    std::string warning;
};

struct CoexistenceSettings {
    int side = 16;
    int truncationRadius = 1;
    std::vector<std::uint64_t> seeds{1};
    long sweeps = 2000;
    long burnIn = 200;
    long thinning = 1;
    /// Starting state of both chains; Explicit is not accepted.
    InitialState init = InitialState::BoundaryAligned;
};

/// Centre magnetization under Plus and Minus boundaries on the box
/// {0..side-1}^d, averaged over seeds. Chains for different seeds run
/// concurrently.
CoexistenceReport coexistenceIndicator(const Interaction& phi, const CoexistenceSettings& settings);

}  // namespace gibbslab
