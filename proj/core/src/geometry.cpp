#include "vcell/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace vcell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double angle) {
    if (angle < 0.0) angle += kTwoPi;
    if (angle >= kTwoPi) angle -= kTwoPi;
    return angle;
}

// Distance of `mid` from the chord (prev, next), signed positive when the
// turn prev -> mid -> next is counterclockwise.
double chord_deviation(Point prev, Point mid, Point next) {
    const Point chord = next - prev;
    const double len = norm(chord);
    if (len == 0.0) return norm(mid - prev);
    return cross(chord, prev - mid) / len;
}

struct LabeledRing {
    std::vector<Point> points;
    std::vector<std::size_t> labels;  // label i belongs to edge points[i] -> points[i + 1]

    std::size_t size() const { return points.size(); }

    void erase(std::size_t i) {
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(i));
    }
};

// Merges coincident vertices and drops collinear ones until neither remains.
void clean_ring(LabeledRing& ring, double epsilon) {
    bool changed = true;
    while (changed && ring.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 2; ++i) {
            const std::size_t next = (i + 1) % ring.size();
            if (distance(ring.points[i], ring.points[next]) <= epsilon) {
                // Edge i has no length; its start vertex goes with it.
                ring.erase(i);
                changed = true;
                break;
            }
        }
        if (changed || ring.size() < 3) continue;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const std::size_t n = ring.size();
            const std::size_t prev = (i + n - 1) % n;
            const std::size_t next = (i + 1) % n;
            const double dev = chord_deviation(ring.points[prev], ring.points[i], ring.points[next]);
            if (std::abs(dev) <= epsilon) {
                if (ring.labels[prev] == kClipEdge) ring.labels[prev] = ring.labels[i];
                ring.erase(i);
                changed = true;
                break;
            }
        }
    }
}

}  // namespace

double polar_angle(Point p) { return wrap_angle(std::atan2(p.y, p.x)); }

double ccw_angle(Point from, Point to) {
    return wrap_angle(std::atan2(cross(from, to), dot(from, to)));
}

Point reflect(Point p, Point a, Point b) {
    const Point dir = b - a;
    const double len2 = dot(dir, dir);
    if (len2 == 0.0) throw DegenerateError("reflect: line through two equal points");
    const Point foot = a + (dot(p - a, dir) / len2) * dir;
    return 2.0 * foot - p;
}

Circle::Circle(Point c, double r) : center(c), radius(r) {
    if (!is_finite(c) || !(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("circle needs a finite center and a positive finite radius");
    }
}

HalfPlane HalfPlane::from_direction(Point direction, double offset) {
    const double len = norm(direction);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(offset)) {
        throw DomainError("half-plane direction must be finite and nonzero");
    }
    return HalfPlane{direction / len, offset / len};
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices, double epsilon)
    : vertices_(std::move(vertices)), epsilon_(epsilon) {
    if (!(epsilon_ >= 0.0)) throw InvalidPolygon("epsilon must be nonnegative");
    const std::size_t n = vertices_.size();
    if (n < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
    for (const Point& p : vertices_) {
        if (!is_finite(p)) throw InvalidPolygon("polygon vertex is not finite");
    }
    if (signed_area(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(vertices_[i], vertices_[j]) <= epsilon_) {
                std::ostringstream msg;
                msg << "polygon vertices " << i << " and " << j << " coincide";
                throw InvalidPolygon(msg.str());
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = chord_deviation(vertex(i + n - 1), vertex(i), vertex(i + 1));
        if (dev <= epsilon_) {
            std::ostringstream msg;
            msg << "polygon is not strictly convex at vertex " << i << " (turn deviation " << dev
                << ")";
            throw InvalidPolygon(msg.str());
        }
    }
    // A star with total turning 4*pi passes the local test; reject it.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = vertex(i + 1) - vertex(i);
        const Point e1 = vertex(i + 2) - vertex(i + 1);
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turning - kTwoPi) > 1e-6) throw InvalidPolygon("polygon winds more than once");
}

double ConvexPolygon::inner_distance(std::size_t i, Point z) const {
    const auto [a, b] = edge(i);
    return cross(b - a, z - a) / distance(a, b);
}

bool ConvexPolygon::contains(Point z) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (inner_distance(i, z) < -epsilon_) return false;
    }
    return true;
}

double signed_area(std::span<const Point> ring) {
    if (ring.size() < 3) return 0.0;
    // Relative to the first vertex to limit cancellation far from the origin.
    const Point base = ring[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
        twice += cross(ring[i] - base, ring[i + 1] - base);
    }
    return 0.5 * twice;
}

double polygon_area(const ConvexPolygon& p) { return signed_area(p.vertices()); }

Circle circumcircle(Point a, Point b, Point c, double epsilon) {
    const Point ab = b - a;
    const Point ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) <= 2.0 * epsilon) {
        throw DegenerateError("circumcircle of collinear points");
    }
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    return Circle(a + offset, norm(offset));
}

TangentPair tangent_points(Point o, Point v, double epsilon) {
    const Point d = v - o;
    const double r = norm(d);
    if (!(r > 1.0 + epsilon)) {
        std::ostringstream msg;
        msg << "tangent_points: point at distance " << r << " is not outside the unit circle";
        throw DomainError(msg.str());
    }
    const Point u = d / r;
    const double along = 1.0 / r;
    const double across = std::sqrt((1.0 - along) * (1.0 + along));
    const Point foot = o + along * u;
    return {foot + across * perp(u), foot - across * perp(u)};
}

ClipResult halfplane_intersection(std::span<const HalfPlane> planes, double bound,
                                  double epsilon) {
    if (planes.empty()) throw std::invalid_argument("halfplane_intersection: no half-planes");
    if (!(bound > 0.0)) throw std::invalid_argument("halfplane_intersection: bound must be > 0");

    LabeledRing ring{{{-bound, -bound}, {bound, -bound}, {bound, bound}, {-bound, bound}},
                     {kClipEdge, kClipEdge, kClipEdge, kClipEdge}};

    LabeledRing next;
    for (std::size_t k = 0; k < planes.size(); ++k) {
        const HalfPlane& plane = planes[k];
        const std::size_t n = ring.size();
        std::vector<double> dist(n);
        bool all_outside = true;
        for (std::size_t i = 0; i < n; ++i) {
            dist[i] = plane.signed_distance(ring.points[i]);
            if (dist[i] <= epsilon) all_outside = false;
        }
        if (all_outside) return ClipResult{};

        next.points.clear();
        next.labels.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            const Point a = ring.points[i];
            const Point b = ring.points[j];
            const bool a_in = dist[i] <= 0.0;
            const bool b_in = dist[j] <= 0.0;
            if (a_in) {
                next.points.push_back(a);
                next.labels.push_back(ring.labels[i]);
            }
            if (a_in != b_in) {
                const double t = dist[i] / (dist[i] - dist[j]);
                next.points.push_back(a + t * (b - a));
                // Entering: the rest of edge i survives. Leaving: the new edge lies on plane k.
                next.labels.push_back(a_in ? k : ring.labels[i]);
            }
        }
        std::swap(ring, next);
        clean_ring(ring, epsilon);
        if (ring.size() < 3) break;
    }

    clean_ring(ring, epsilon);
    if (ring.size() < 3 || std::abs(signed_area(ring.points)) <= epsilon) {
        throw DegenerateError("half-plane intersection has zero area");
    }

    ClipResult result;
    result.status = ClipStatus::kBounded;
    for (std::size_t label : ring.labels) {
        if (label == kClipEdge) result.status = ClipStatus::kUnbounded;
    }
    result.edge_sources = ring.labels;
    result.polygon.emplace(std::move(ring.points), epsilon);
    return result;
}

double disk_containment_margin(const ConvexPolygon& p, const Circle& c) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        margin = std::min(margin, p.inner_distance(i, c.center) - c.radius);
    }
    return margin;
}

bool convex_hull_contains_disk(const ConvexPolygon& p, const Circle& c) {
    return disk_containment_margin(p, c) >= -p.epsilon();
}

}  // namespace vcell
