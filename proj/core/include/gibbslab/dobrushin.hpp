#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "gibbslab/interaction.hpp"
#include "gibbslab/kernel.hpp"

namespace gibbslab {

/// Largest dependence set (sites other than the origin) whose boundary
/// patterns are enumerated.
inline constexpr std::size_t kDependenceCap = 22;

enum class Verdict { UniqueGibbs, Inconclusive };
std::string toString(Verdict v);

struct DobrushinReport {
    /// Nonzero influence coefficients rho(x), each already including the
    /// truncation slack and clipped to [0, 1].
    std::map<Point, double> rhoValues;
    double rhoSum = 0.0;
    Verdict rhoVerdict = Verdict::Inconclusive;
    Interval varNorm;
    Verdict varVerdict = Verdict::Inconclusive;
    /// Total slack added for kernel pairs beyond the truncation radius.
    double truncationNote = 0.0;
    int truncationRadius = 0;
    std::size_t dependenceSize = 0;
};

/// Sites other than the origin that share a term with it.
SiteSet dependenceSet(const Interaction& phi, int truncationRadius);

/// Influence of the spin at x on the single-site conditional at the origin.
double rho(const Interaction& phi, const Point& x, int truncationRadius);

/// Rho part of the report: every rho(x) and the criterion sum.
DobrushinReport dobrushinSum(const Interaction& phi, int truncationRadius);
/// Var part of the report.
DobrushinReport varCriterion(const Interaction& phi, double relTol = 1e-9);
/// Both parts.
DobrushinReport dobrushinReport(const Interaction& phi, int truncationRadius, double relTol = 1e-9);

}  // namespace gibbslab
