#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vcell {

/// Absolute tolerance on lengths and areas shared by every predicate.
inline constexpr double kDefaultEpsilon = 1e-9;

/// Circumradius of the extremal constituting triangle, 2/sqrt(3).
inline const double kMinVertexRadius = 2.0 / std::sqrt(3.0);

/// Area of the regular hexagon with inradius 1, 2*sqrt(3).
inline const double kMinCellArea = 2.0 * std::sqrt(3.0);

inline constexpr double kPi = 3.14159265358979323846;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Three (nearly) collinear points, or an intersection of zero area.
class DegenerateError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Argument outside the domain of a formula (e.g. a point inside the unit disk).
class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class InvalidPolygon : public GeometryError {
public:
    using GeometryError::GeometryError;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Counterclockwise rotation by 90 degrees.
constexpr Point perp(Point a) { return {-a.y, a.x}; }

inline Point from_polar(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Polar angle of `p` normalized to [0, 2*pi).
double polar_angle(Point p);

/// Counterclockwise angle swept from direction `from` to direction `to`, in [0, 2*pi).
double ccw_angle(Point from, Point to);

/// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
constexpr double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Reflection of `p` across the line through `a` and `b`.
Point reflect(Point p, Point a, Point b);

struct Circle {
    Point center;
    double radius = 1.0;

    /// Throws DomainError unless radius > 0 and the center is finite.
    Circle(Point center, double radius);
};

/// Closed half-plane {z : dot(z, normal) <= offset} with unit `normal`.
struct HalfPlane {
    Point normal;
    double offset = 0.0;

    /// Normalizes `direction`; throws DomainError for a zero or non-finite direction.
    static HalfPlane from_direction(Point direction, double offset);

    /// Positive outside, negative inside.
    double signed_distance(Point z) const { return dot(z, normal) - offset; }
};

/// Strictly convex polygon stored counterclockwise.
///
/// Construction accepts either orientation and reverses clockwise input,
/// so every consumer sees counterclockwise order. Rejected inputs: fewer
/// than three vertices, non-finite coordinates, vertices closer than
/// epsilon, reflex turns below -epsilon and collinear consecutive triples.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point> vertices, double epsilon = kDefaultEpsilon);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double epsilon() const { return epsilon_; }

    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    /// Edge i runs from vertex i to vertex i + 1 (cyclically).
    std::pair<Point, Point> edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }

    /// Signed distance from `z` to the line of edge i; positive on the inner side.
    double inner_distance(std::size_t i, Point z) const;

    /// True when `z` lies inside or within epsilon of the boundary.
    bool contains(Point z) const;

private:
    std::vector<Point> vertices_;
    double epsilon_;
};

/// Shoelace area.
double polygon_area(const ConvexPolygon& p);

/// Signed shoelace area of an arbitrary closed vertex ring.
double signed_area(std::span<const Point> ring);

/// Circle through three points. Throws DegenerateError when the points are
/// collinear within `epsilon` (measured as twice the triangle area).
Circle circumcircle(Point a, Point b, Point c, double epsilon = kDefaultEpsilon);

struct TangentPair {
    Point a;  ///< counterclockwise of the ray o -> v
    Point c;  ///< clockwise of the ray o -> v
};

/// Tangent points from `v` to the unit circle centered at `o`.
/// Throws DomainError when |o - v| <= 1 + epsilon.
TangentPair tangent_points(Point o, Point v, double epsilon = kDefaultEpsilon);

/// Edge label for edges of the clipping square in halfplane_intersection.
inline constexpr std::size_t kClipEdge = std::numeric_limits<std::size_t>::max();

enum class ClipStatus { kBounded, kUnbounded, kEmpty };

struct ClipResult {
    ClipStatus status = ClipStatus::kEmpty;
    std::optional<ConvexPolygon> polygon;  ///< absent only when status == kEmpty
    /// Per polygon edge, the index of the half-plane it lies on, or kClipEdge.
    std::vector<std::size_t> edge_sources;
};

/// Intersection of `planes` with the square [-bound, bound]^2 by successive
/// clipping. Coincident vertices are merged and collinear ones dropped.
/// Throws DegenerateError when the result is nonempty but has no area.
ClipResult halfplane_intersection(std::span<const HalfPlane> planes, double bound,
                                  double epsilon = kDefaultEpsilon);

/// True iff the disk lies inside the polygon up to epsilon.
bool convex_hull_contains_disk(const ConvexPolygon& p, const Circle& c);

/// Minimum over edges of (distance from `center` to the edge line) - radius,
/// negative when the center is outside or the disk pokes through an edge.
double disk_containment_margin(const ConvexPolygon& p, const Circle& c);

}  // namespace vcell
