#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "gibbslab/boundary.hpp"
#include "gibbslab/interaction.hpp"
#include "gibbslab/io.hpp"

namespace gibbslab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
    ReportTable table;
    int exitCode = kExitPass;
    /// Human-readable lines for the terminal.
    std::vector<std::string> summary;
    /// When set, written verbatim instead of the table (export-interaction).
    std::string raw;
    bool hasRaw = false;
};

const std::vector<std::string>& commandNames();

/// Runs one subcommand. Throws ConfigError or a std::exception from the
/// library on bad input.
CommandResult runCommand(const std::string& name, const Config& cfg);

// Builders shared with the tests.
int dimensionOf(const Config& cfg);
int truncationRadiusOf(const Config& cfg);
Interaction buildInteraction(const Config& cfg, const std::string& section, int dim);
Rectangle volumeBox(const Config& cfg, int dim);
BoundaryCondition buildBoundary(const Config& cfg, int dim);

}  // namespace gibbslab::cli
