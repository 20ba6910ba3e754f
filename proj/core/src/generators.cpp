#include "gibbslab/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gibbslab {

Interaction randomInteraction(const RandomInteractionSpec& spec, Rng& rng) {
    if (spec.maxSites < 1 || spec.maxDiameter < 0 || spec.shapes < 0) {
        throw std::invalid_argument("randomInteraction: bad spec");
    }
    const int side = spec.maxDiameter + 1;
    int boxSites = 1;
    for (int i = 0; i < spec.dim; ++i) boxSites *= side;
    Interaction phi(spec.dim);
    for (int s = 0; s < spec.shapes; ++s) {
        const int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(spec.maxSites, boxSites))));
        std::vector<Point> pts{Point(spec.dim)};
        for (int guard = 0; static_cast<int>(pts.size()) < want && guard < 1000; ++guard) {
            Point p(spec.dim);
            if (spec.l1Connected) {
                const Point& base = pts[rng.below(pts.size())];
                const int axis = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.dim)));
                p = base + Point::unit(spec.dim, axis, rng.below(2) ? 1 : -1);
                if (p[axis] < 0 || p[axis] > spec.maxDiameter) continue;
            } else {
                for (int i = 0; i < spec.dim; ++i) p[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(side)));
            }
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        const SiteSet shape(pts);
        std::vector<double> table(std::size_t{1} << shape.size());
        for (double& v : table) v = spec.amplitude * (2.0 * rng.uniform() - 1.0);
        if (spec.flipSymmetric) {
            const ConfigCode mask = table.size() - 1;
            for (ConfigCode c = 0; c < table.size(); ++c) {
                if (c > (~c & mask)) continue;
                const double avg = 0.5 * (table[c] + table[~c & mask]);
                table[c] = avg;
                table[~c & mask] = avg;
            }
        }
        phi.addLocal(shape, std::move(table));
    }
    if (spec.targetNormAbs > 0.0) {
        const double na = normAbs(phi).hi;
        if (na > 0.0) phi = scale(phi, spec.targetNormAbs / na);
    }
    return phi;
}

}  // namespace gibbslab
