#pragma once

#include "gibbslab/interaction.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

struct RandomInteractionSpec {
    int dim = 2;
    int shapes = 3;       ///< number of random shapes drawn
    int maxSites = 3;     ///< sites per shape, drawn in [1, maxSites]
    int maxDiameter = 2;  ///< shapes live in {0..maxDiameter}^d
    double amplitude = 0.1;  ///< table entries uniform in [-amplitude, amplitude]
    bool flipSymmetric = false;
    bool l1Connected = false;
    /// When positive, the result is rescaled so normAbs equals this value.
    double targetNormAbs = -1.0;
};

/// Random finite-support interaction; deterministic given the Rng state.
Interaction randomInteraction(const RandomInteractionSpec& spec, Rng& rng);

}  // namespace gibbslab
