#pragma once

namespace gibbslab {

namespace detail {

template <class Fn>
void shellRecurse(Point& p, int axis, int dim, int n, bool onShell, Fn& fn) {
    if (axis == dim) {
        if (onShell) fn(static_cast<const Point&>(p));
        return;
    }
    const bool last = axis == dim - 1;
    for (int v = -n; v <= n; ++v) {
        const bool edge = v == -n || v == n;
        if (last && !onShell && !edge) continue;
        p[axis] = v;
        shellRecurse(p, axis + 1, dim, n, onShell || edge, fn);
    }
    p[axis] = 0;
}

}  // namespace detail

template <class Fn>
void forEachShellPoint(int dim, int n, Fn&& fn) {
    Point p(dim);
    if (n == 0) {
        fn(static_cast<const Point&>(p));
        return;
    }
    detail::shellRecurse(p, 0, dim, n, false, fn);
}

}  // namespace gibbslab
