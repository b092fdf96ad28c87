#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vcell/geometry.hpp"

namespace vcell {

/// Area per unit angle of the tangent quadrilateral [o a v c] with |o - v| = r:
/// sqrt(r^2 - 1) / (2 atan sqrt(r^2 - 1)). Throws DomainError for r <= 1 + 1e-12.
double angular_density(double r);

/// Density of the quadrilateral after the triangle [o b c] with |b - c| = x
/// is cut from one side: (s - x/2) / (2 atan s - atan x), s = sqrt(r^2 - 1).
/// Throws DomainError unless r > 1 and 0 <= x <= s.
double truncated_density(double r, double x);

/// The lowest density any vertex at distance >= 2/sqrt(3) can have, sqrt(3)/pi.
inline const double kMinDensity = std::sqrt(3.0) / kPi;

/// Which of the three polygon conditions a decomposition input violates.
enum class PolygonCondition {
    kConvex,          ///< (i)
    kContainsDisk,    ///< (ii)
    kVertexDistance,  ///< (iii)
};

const char* to_string(PolygonCondition condition);

class ConditionViolation : public GeometryError {
public:
    ConditionViolation(PolygonCondition condition, const std::string& detail);
    PolygonCondition condition() const { return condition_; }

private:
    PolygonCondition condition_;
};

/// Internal consistency failure that the conditions should have excluded.
class InvariantViolation : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Portion of the tangent quadrilateral of one vertex owned by that vertex
/// after overlaps with its neighbors are split at the truncation points.
///
/// Points follow counterclockwise order around `o`: b_prev, c, v, a, b_next
/// (c and a are the clockwise and counterclockwise tangent points).
struct WedgeQuad {
    Point o;
    Point v;
    Point a;
    Point c;
    Point b_prev;
    Point b_next;
    double r = 0.0;
    double area = 0.0;
    double angle = 0.0;
    double density = 0.0;
    double start_angle = 0.0;  ///< polar angle of b_prev about o, in [0, 2*pi)
    bool adjacent_prev = false;  ///< no overlap with the previous vertex; b_prev is that vertex's a
    bool adjacent_next = false;  ///< no overlap with the next vertex; b_next == a
};

struct WedgeDecomposition {
    std::vector<WedgeQuad> wedges;
    double total_angle = 0.0;
    double total_area = 0.0;
    double certified_lower_bound = 0.0;  ///< sum of angle * sqrt(3)/pi
    double polygon_area = 0.0;
};

struct DecomposeOptions {
    double epsilon = kDefaultEpsilon;
    /// Angular gap or overlap (radians) between consecutive tangent
    /// quadrilaterals treated as exact contact. An edge at distance 1 - d from
    /// o opens a gap of about d * (1/s_i + 1/s_{i+1}).
    double adjacency_tolerance = 1e-7;
};

/// Splits `polygon` around the unit disk at `o` into per-vertex wedges.
/// Throws ConditionViolation naming (ii) or (iii) when a precondition fails.
WedgeDecomposition decompose(const ConvexPolygon& polygon, Point o,
                             const DecomposeOptions& options = {});

/// Same, from a raw counterclockwise vertex list; a list that does not form
/// a strictly convex polygon is reported as a violation of (i).
WedgeDecomposition decompose(std::vector<Point> vertices, Point o,
                             const DecomposeOptions& options = {});

struct CertificateOptions {
    DecomposeOptions decompose;
    double area_tolerance = 1e-6;
    double shape_tolerance = 1e-4;
};

/// The chain polygon_area >= wedge_area >= sum(angle_j * E(r_j)) >= 2*sqrt(3),
/// with the numeric slack of each link.
struct LowerBoundCertificate {
    WedgeDecomposition decomposition;
    double polygon_area = 0.0;
    double wedge_area = 0.0;
    double density_bound = 0.0;  ///< sum over wedges of angle_j * E(r_j)
    double floor = 0.0;          ///< 2*sqrt(3)

    double containment_slack = 0.0;  ///< polygon_area - wedge_area
    double truncation_slack = 0.0;   ///< wedge_area - density_bound
    double minimum_slack = 0.0;      ///< density_bound - floor

    /// Area within area_tolerance of 2*sqrt(3).
    bool is_extremal = false;
    /// Six vertices, radii 2/sqrt(3) and central angles pi/3, within shape_tolerance.
    bool regular_hexagon = false;

    /// Largest full tangent angle 2 atan sqrt(r^2 - 1) over the vertices, and
    /// the radius 1/cos(pi/n) it forces for n <= 5 (zero otherwise).
    double max_tangent_angle = 0.0;
    double forced_radius = 0.0;
    double max_vertex_radius = 0.0;
    /// Sum of the untruncated tangent angles; exceeds 2*pi for n > 6.
    double untruncated_angle_sum = 0.0;

    double min_slack() const;
    bool sound(double tolerance = 1e-9) const { return min_slack() >= -tolerance; }
};

LowerBoundCertificate lower_bound_certificate(const ConvexPolygon& polygon, Point o,
                                              const CertificateOptions& options = {});

}  // namespace vcell
