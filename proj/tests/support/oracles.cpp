#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace {

bool inVolume(const SiteSet& v, const Point& p) { return std::binary_search(v.begin(), v.end(), p); }

void forEachInBox(const Point& lo, const Point& hi, const std::function<void(const Point&)>& fn) {
    Point p = lo;
    const int d = lo.dim();
    while (true) {
        fn(p);
        int i = d - 1;
        while (i >= 0 && p[i] == hi[i]) {
            p[i] = lo[i];
            --i;
        }
        if (i < 0) return;
        ++p[i];
    }
}

}  // namespace

double hamiltonian(const Interaction& phi, const SiteSet& volume, const SpinFn& spin, int radius, bool insideOnly) {
    const int d = phi.dim();
    double h = 0.0;
    Point vlo = volume[0], vhi = volume[0];
    for (const Point& p : volume) {
        for (int i = 0; i < d; ++i) {
            vlo[i] = std::min(vlo[i], p[i]);
            vhi[i] = std::max(vhi[i], p[i]);
        }
    }
    for (const auto& f : phi.localFunctions()) {
        Point slo = f.shape[0], shi = f.shape[0];
        for (const Point& p : f.shape) {
            for (int i = 0; i < d; ++i) {
                slo[i] = std::min(slo[i], p[i]);
                shi[i] = std::max(shi[i], p[i]);
            }
        }
        forEachInBox(vlo - shi, vhi - slo, [&](const Point& a) {
            bool meets = false, inside = true;
            std::uint64_t code = 0;
            for (std::size_t k = 0; k < f.shape.size(); ++k) {
                const Point x = f.shape[k] + a;
                const bool in = inVolume(volume, x);
                meets = meets || in;
                inside = inside && in;
                if (spin(x) < 0) code |= std::uint64_t{1} << k;
            }
            if (!meets || (insideOnly && !inside)) return;
            h += f.table[code];
        });
    }
    if (phi.hasKernel() && radius > 0) {
        const auto& k = *phi.kernel();
        Point lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            lo[i] = -radius;
            hi[i] = radius;
        }
        for (const Point& x : volume) {
            forEachInBox(lo, hi, [&](const Point& off) {
                if (off.isZero()) return;
                const Point y = x + off;
                const bool yIn = inVolume(volume, y);
                if (yIn && y < x) return;
                if (!yIn && insideOnly) return;
                h += -k.coupling(off) * spin(x) * spin(y);
            });
        }
    }
    return h;
}

Exact gibbs(const Interaction& phi, const SiteSet& volume, const SpinFn& outside, int radius, bool insideOnly) {
    const std::size_t n = volume.size();
    std::vector<double> lw(std::size_t{1} << n);
    for (std::uint64_t c = 0; c < lw.size(); ++c) {
        auto spin = [&](const Point& p) -> Spin {
            const auto it = std::lower_bound(volume.begin(), volume.end(), p);
            if (it != volume.end() && *it == p) {
                const auto k = static_cast<std::size_t>(it - volume.begin());
                return ((c >> k) & 1u) ? Spin{-1} : Spin{1};
            }
            return insideOnly ? Spin{1} : outside(p);
        };
        lw[c] = -hamiltonian(phi, volume, spin, radius, insideOnly);
    }
    const double m = *std::max_element(lw.begin(), lw.end());
    double s = 0.0;
    for (double v : lw) s += std::exp(v - m);
    Exact e;
    e.logZ = m + std::log(s);
    e.probs.resize(lw.size());
    for (std::size_t c = 0; c < lw.size(); ++c) e.probs[c] = std::exp(lw[c] - e.logZ);
    return e;
}

std::vector<double> matPow2(const std::vector<double>& m, int p) {
    std::vector<double> r{1, 0, 0, 1};
    for (int i = 0; i < p; ++i) {
        r = {r[0] * m[0] + r[1] * m[2], r[0] * m[1] + r[1] * m[3], r[2] * m[0] + r[3] * m[2],
             r[2] * m[1] + r[3] * m[3]};
    }
    return r;
}

double isingChainLogZ(double beta, int n) {
    const std::vector<double> t{std::exp(beta), std::exp(-beta), std::exp(-beta), std::exp(beta)};
    const auto p = matPow2(t, n - 1);
    return std::log(p[0] + p[1] + p[2] + p[3]);
}

std::map<int, std::size_t> censusByBoundingBox(int nMax) {
    std::map<int, std::size_t> counts;
    const int half = nMax / 2;
    for (int w = 1; w < half; ++w) {
        for (int h = 1; w + h <= half; ++h) {
            const int cells = w * h;
            for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
                auto in = [&](int x, int y) {
                    return x >= 0 && x < w && y >= 0 && y < h && ((mask >> (x * h + y)) & 1u);
                };
                bool full = true;
                for (int x = 0; x < w && full; ++x) {
                    bool any = false;
                    for (int y = 0; y < h; ++y) any = any || in(x, y);
                    full = any;
                }
                for (int y = 0; y < h && full; ++y) {
                    bool any = false;
                    for (int x = 0; x < w; ++x) any = any || in(x, y);
                    full = any;
                }
                if (!full) continue;
                // connectivity of the set and of its complement in the padded box
                auto flood = [&](bool member, int sx, int sy) {
                    std::vector<char> seen(static_cast<std::size_t>((w + 2) * (h + 2)), 0);
                    std::vector<std::pair<int, int>> st{{sx, sy}};
                    seen[static_cast<std::size_t>((sx + 1) * (h + 2) + sy + 1)] = 1;
                    int reached = 1;
                    while (!st.empty()) {
                        auto [x, y] = st.back();
                        st.pop_back();
                        for (int dx = -1; dx <= 1; ++dx) {
                            for (int dy = -1; dy <= 1; ++dy) {
                                const int nx = x + dx, ny = y + dy;
                                if (nx < -1 || nx > w || ny < -1 || ny > h) continue;
                                if (in(nx, ny) != member) continue;
                                auto& s = seen[static_cast<std::size_t>((nx + 1) * (h + 2) + ny + 1)];
                                if (s) continue;
                                s = 1;
                                ++reached;
                                st.push_back({nx, ny});
                            }
                        }
                    }
                    return reached;
                };
                int first = 0;
                while (!((mask >> first) & 1u)) ++first;
                const int setSize = std::popcount(mask);
                if (flood(true, first / h, first % h) != setSize) continue;
                const int padded = (w + 2) * (h + 2);
                if (flood(false, -1, -1) != padded - setSize) continue;
                int perim = 0;
                for (int x = 0; x < w; ++x) {
                    for (int y = 0; y < h; ++y) {
                        if (!in(x, y)) continue;
                        perim += !in(x + 1, y) + !in(x - 1, y) + !in(x, y + 1) + !in(x, y - 1);
                    }
                }
                if (perim <= nMax) counts[perim] += static_cast<std::size_t>(setSize);
            }
        }
    }
    return counts;
}

int cdBySharedVertices(int dim) {
    // vertices in doubled coordinates
    auto vertices = [dim](const Point& lo, int axis) {
        std::vector<Point> vs;
        for (int m = 0; m < (1 << (dim - 1)); ++m) {
            Point v(dim);
            int bit = 0;
            for (int i = 0; i < dim; ++i) {
                if (i == axis) {
                    v[i] = 2 * lo[i] + 1;
                } else {
                    v[i] = 2 * lo[i] + (((m >> bit++) & 1) ? 1 : -1);
                }
            }
            vs.push_back(v);
        }
        std::sort(vs.begin(), vs.end());
        return vs;
    };
    const Point origin(dim);
    const auto ref = vertices(origin, 0);
    Point lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
        lo[i] = -2;
        hi[i] = 2;
    }
    int count = 0;
    forEachInBox(lo, hi, [&](const Point& p) {
        for (int axis = 0; axis < dim; ++axis) {
            if (p == origin && axis == 0) continue;
            const auto vs = vertices(p, axis);
            std::vector<Point> common;
            std::set_intersection(vs.begin(), vs.end(), ref.begin(), ref.end(), std::back_inserter(common));
            if (!common.empty()) ++count;
        }
    });
    return count;
}

double rho(const Interaction& phi, const Point& x, int reach) {
    const int d = phi.dim();
    std::vector<Point> window;
    Point lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = -reach;
        hi[i] = reach;
    }
    forEachInBox(lo, hi, [&](const Point& p) {
        if (!p.isZero()) window.push_back(p);
    });
    const auto xi = std::find(window.begin(), window.end(), x) - window.begin();
    if (xi == static_cast<long>(window.size())) throw std::invalid_argument("oracle::rho: x outside the window");
    const SiteSet origin{Point(d)};
    auto pPlus = [&](std::uint64_t eta) {
        double e[2];
        for (int s = 0; s < 2; ++s) {
            auto spin = [&](const Point& p) -> Spin {
                if (p.isZero()) return s == 0 ? Spin{1} : Spin{-1};
                const auto it = std::find(window.begin(), window.end(), p);
                if (it == window.end()) return Spin{1};
                return ((eta >> (it - window.begin())) & 1u) ? Spin{-1} : Spin{1};
            };
            e[s] = hamiltonian(phi, origin, spin, reach);
        }
        return 1.0 / (1.0 + std::exp(e[0] - e[1]));
    };
    double best = 0.0;
    for (std::uint64_t eta = 0; eta < (std::uint64_t{1} << window.size()); ++eta) {
        if ((eta >> xi) & 1u) continue;
        best = std::max(best, std::fabs(pPlus(eta) - pPlus(eta | (std::uint64_t{1} << xi))));
    }
    return best;
}

}  // namespace oracle
