#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "vcell/geometry.hpp"

namespace vcell::test {

/// Triangular lattice with spacing 2: the center, then rings of 6 and 12.
inline std::vector<Point> lattice_patch19() {
    std::vector<Point> pts{{0.0, 0.0}};
    const double h = std::sqrt(3.0);
    for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
            const Point p{2.0 * i + j, h * j};
            const double r = norm(p);
            if (r > 1e-9 && r < 4.0 + 1e-9) pts.push_back(p);
        }
    }
    std::stable_sort(pts.begin() + 1, pts.end(),
                     [](Point a, Point b) { return norm(a) < norm(b) - 1e-9; });
    return pts;
}

/// Random sequential addition of unit-disk centers in [0, side]^2.
inline std::vector<Point> random_packing(std::mt19937_64& rng, double side, std::size_t attempts,
                                         double min_distance = 2.0) {
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < attempts; ++k) {
        const Point p{u(rng), u(rng)};
        bool ok = true;
        for (const Point& q : pts) {
            if (distance(p, q) < min_distance) {
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(p);
    }
    return pts;
}

/// Monotone-chain hull, counterclockwise, collinear points dropped.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    auto turn = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 1e-9) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i - 1]) <= 1e-9) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

/// Polygon satisfying convexity, unit-disk containment about the origin and
/// vertex radii >= 2/sqrt(3): random vertices, hull, then scaled up until
/// every edge line is at distance >= 1. Half of the draws are jittered
/// regular polygons with radii just above 2/sqrt(3), which land close to
/// the area floor.
inline std::vector<Point> random_feasible_polygon(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const bool near_regular = unit(rng) < 0.5;
        const double spread = near_regular ? 0.02 * unit(rng) : 1.0;
        std::vector<double> thetas(n);
        for (std::size_t k = 0; k < n; ++k) {
            thetas[k] = near_regular
                            ? 2.0 * kPi * (static_cast<double>(k) + spread * (unit(rng) - 0.5)) / static_cast<double>(n)
                            : 2.0 * kPi * unit(rng);
        }
        std::sort(thetas.begin(), thetas.end());
        auto radius = [&] {
            return kMinVertexRadius + (near_regular ? spread * unit(rng) : (2.5 - kMinVertexRadius) * unit(rng));
        };
        double max_gap = thetas[0] + 2.0 * kPi - thetas[n - 1];
        for (std::size_t k = 1; k < n; ++k) max_gap = std::max(max_gap, thetas[k] - thetas[k - 1]);
        if (max_gap >= kPi - 0.05) continue;
        std::vector<Point> v;
        for (double t : thetas) v.push_back(from_polar(radius(), t));
        v = convex_hull(std::move(v));
        if (v.size() < 3) continue;
        double h_min = 1e300;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Point a = v[k];
            const Point b = v[(k + 1) % v.size()];
            h_min = std::min(h_min, cross(a, b) / distance(a, b));
        }
        if (!(h_min > 0.0)) continue;
        const double s = std::max(1.0, 1.0 / h_min) * (1.0 + 1e-12);
        for (Point& p : v) p = s * p;
        return v;
    }
}

/// Area by splitting into triangles from the first vertex.
inline double fan_area(const std::vector<Point>& v) {
    double a = 0.0;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        const Point p = v[k] - v[0];
        const Point q = v[k + 1] - v[0];
        a += 0.5 * (p.x * q.y - p.y * q.x);
    }
    return a;
}

inline std::vector<Point> regular_polygon(std::size_t n, double circumradius, double phase = 0.0) {
    std::vector<Point> v;
    for (std::size_t k = 0; k < n; ++k) {
        v.push_back(from_polar(circumradius, phase + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
    }
    return v;
}

}  // namespace vcell::test
