#include "vcell/density.hpp"

#include <algorithm>
#include <sstream>

namespace vcell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDensityDomainMargin = 1e-12;

struct VertexTangents {
    Point v;
    Point a;
    Point c;
    double r = 0.0;
    double half_angle = 0.0;  // atan sqrt(r^2 - 1)
};

// Intersection of segment [p0, p1] with segment [q0, q1]; parameters are
// returned so the caller can reject crossings outside the segments.
bool segment_intersection(Point p0, Point p1, Point q0, Point q1, Point& out, double& t,
                          double& u) {
    const Point d = p1 - p0;
    const Point e = q1 - q0;
    const double denom = cross(d, e);
    if (denom == 0.0) return false;
    const Point w = q0 - p0;
    t = cross(w, e) / denom;
    u = cross(w, d) / denom;
    out = p0 + t * d;
    return true;
}

double quad_area(Point o, Point b_prev, Point v, Point b_next) {
    return 0.5 * (cross(b_prev - o, v - o) + cross(v - o, b_next - o));
}

}  // namespace

double angular_density(double r) {
    if (!(r > 1.0 + kDensityDomainMargin) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "angular_density: r = " << r << " is not > 1";
        throw DomainError(msg.str());
    }
    const double s = std::sqrt((r - 1.0) * (r + 1.0));
    return s / (2.0 * std::atan(s));
}

double truncated_density(double r, double x) {
    if (!(r > 1.0 + kDensityDomainMargin) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "truncated_density: r = " << r << " is not > 1";
        throw DomainError(msg.str());
    }
    const double s = std::sqrt((r - 1.0) * (r + 1.0));
    // x = sqrt(r^2 - 1) computed another way may land an ulp or two above s.
    if (!(x >= 0.0) || !(x <= s * (1.0 + 1e-12))) {
        std::ostringstream msg;
        msg << "truncated_density: x = " << x << " outside [0, " << s << "]";
        throw DomainError(msg.str());
    }
    x = std::min(x, s);
    return (s - 0.5 * x) / (2.0 * std::atan(s) - std::atan(x));
}

const char* to_string(PolygonCondition condition) {
    switch (condition) {
        case PolygonCondition::kConvex:
            return "(i) convexity";
        case PolygonCondition::kContainsDisk:
            return "(ii) contains the unit disk";
        case PolygonCondition::kVertexDistance:
            return "(iii) vertex distance >= 2/sqrt(3)";
    }
    return "unknown condition";
}

ConditionViolation::ConditionViolation(PolygonCondition condition, const std::string& detail)
    : GeometryError(std::string("condition ") + to_string(condition) + " violated: " + detail),
      condition_(condition) {}

WedgeDecomposition decompose(std::vector<Point> vertices, Point o,
                             const DecomposeOptions& options) {
    std::optional<ConvexPolygon> polygon;
    try {
        polygon.emplace(std::move(vertices), options.epsilon);
    } catch (const InvalidPolygon& e) {
        throw ConditionViolation(PolygonCondition::kConvex, e.what());
    }
    return decompose(*polygon, o, options);
}

WedgeDecomposition decompose(const ConvexPolygon& polygon, Point o,
                             const DecomposeOptions& options) {
    const double eps = options.epsilon;
    const std::size_t n = polygon.size();

    const double margin = disk_containment_margin(polygon, Circle(o, 1.0));
    if (margin < -eps) {
        std::ostringstream msg;
        msg << "unit disk pokes out by " << -margin;
        throw ConditionViolation(PolygonCondition::kContainsDisk, msg.str());
    }

    std::vector<VertexTangents> tangents(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point v = polygon[i];
        const double r = distance(v, o);
        if (r < kMinVertexRadius - eps) {
            std::ostringstream msg;
            msg << "vertex " << i << " at distance " << r;
            throw ConditionViolation(PolygonCondition::kVertexDistance, msg.str());
        }
        const TangentPair tp = tangent_points(o, v, eps);
        tangents[i] = {v, tp.a, tp.c, r, std::atan(std::sqrt((r - 1.0) * (r + 1.0)))};
    }

    // b[i] separates the wedge of vertex i from that of vertex i + 1.
    std::vector<Point> b(n);
    std::vector<bool> adjacent(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const VertexTangents& cur = tangents[i];
        const VertexTangents& nxt = tangents[(i + 1) % n];
        const double gap = ccw_angle(cur.v - o, nxt.v - o);
        const double overlap = cur.half_angle + nxt.half_angle - gap;
        if (std::abs(overlap) <= options.adjacency_tolerance) {
            b[i] = cur.a;
            adjacent[i] = true;
            continue;
        }
        if (overlap < 0.0) {
            std::ostringstream msg;
            msg << "tangent quadrilaterals of vertices " << i << " and " << (i + 1) % n
                << " are separated by " << -overlap << " rad";
            throw InvariantViolation(msg.str());
        }
        Point cross_point;
        double t = 0.0, u = 0.0;
        constexpr double kSlack = 1e-9;
        if (!segment_intersection(cur.v, cur.a, nxt.v, nxt.c, cross_point, t, u) ||
            t < -kSlack || t > 1.0 + kSlack || u < -kSlack || u > 1.0 + kSlack) {
            std::ostringstream msg;
            msg << "tangent segments of vertices " << i << " and " << (i + 1) % n
                << " do not cross";
            throw InvariantViolation(msg.str());
        }
        b[i] = cross_point;
    }

    WedgeDecomposition out;
    out.wedges.reserve(n);
    out.polygon_area = polygon_area(polygon);
    for (std::size_t i = 0; i < n; ++i) {
        const VertexTangents& vt = tangents[i];
        const std::size_t prev = (i + n - 1) % n;
        WedgeQuad w;
        w.o = o;
        w.v = vt.v;
        w.a = vt.a;
        w.c = vt.c;
        w.b_prev = b[prev];
        w.b_next = b[i];
        w.adjacent_prev = adjacent[prev];
        w.adjacent_next = adjacent[i];
        w.r = vt.r;
        w.area = quad_area(o, w.b_prev, w.v, w.b_next);
        w.angle = ccw_angle(w.b_prev - o, w.b_next - o);
        w.start_angle = polar_angle(w.b_prev - o);
        if (!(w.angle > 0.0) || !(w.angle < kPi) || !(w.area > 0.0)) {
            std::ostringstream msg;
            msg << "wedge " << i << " is degenerate (angle " << w.angle << ", area " << w.area
                << ")";
            throw InvariantViolation(msg.str());
        }
        w.density = w.area / w.angle;
        out.total_angle += w.angle;
        out.total_area += w.area;
        out.wedges.push_back(w);
    }
    out.certified_lower_bound = out.total_angle * kMinDensity;

    if (std::abs(out.total_angle - kTwoPi) > 1e-9) {
        std::ostringstream msg;
        msg << "wedge angles sum to " << out.total_angle << ", not 2*pi";
        throw InvariantViolation(msg.str());
    }
    return out;
}

double LowerBoundCertificate::min_slack() const {
    return std::min({containment_slack, truncation_slack, minimum_slack});
}

LowerBoundCertificate lower_bound_certificate(const ConvexPolygon& polygon, Point o,
                                              const CertificateOptions& options) {
    LowerBoundCertificate cert;
    cert.decomposition = decompose(polygon, o, options.decompose);
    const WedgeDecomposition& dec = cert.decomposition;
    const std::size_t n = polygon.size();

    cert.polygon_area = dec.polygon_area;
    cert.wedge_area = dec.total_area;
    cert.floor = kMinCellArea;
    for (const WedgeQuad& w : dec.wedges) {
        cert.density_bound += w.angle * angular_density(w.r);
        cert.max_tangent_angle = std::max(cert.max_tangent_angle, 2.0 * std::atan(std::sqrt(
                                                                        (w.r - 1.0) * (w.r + 1.0))));
        cert.max_vertex_radius = std::max(cert.max_vertex_radius, w.r);
        cert.untruncated_angle_sum += 2.0 * std::atan(std::sqrt((w.r - 1.0) * (w.r + 1.0)));
    }
    cert.containment_slack = cert.polygon_area - cert.wedge_area;
    cert.truncation_slack = cert.wedge_area - cert.density_bound;
    cert.minimum_slack = cert.density_bound - cert.floor;
    if (n <= 5) cert.forced_radius = 1.0 / std::cos(kPi / static_cast<double>(n));

    cert.is_extremal = cert.polygon_area <= kMinCellArea + options.area_tolerance;

    bool hexagon = n == 6;
    for (std::size_t i = 0; hexagon && i < n; ++i) {
        const double r = distance(polygon[i], o);
        const double gap = ccw_angle(polygon[i] - o, polygon.vertex(i + 1) - o);
        hexagon = std::abs(r - kMinVertexRadius) <= options.shape_tolerance &&
                  std::abs(gap - kPi / 3.0) <= options.shape_tolerance;
    }
    cert.regular_hexagon = hexagon;
    return cert;
}

}  // namespace vcell
