#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "vcell/geometry.hpp"

namespace vcell {

namespace detail {
class SiteGrid;
}

/// Two centers closer than 2 - epsilon.
class AdmissibilityError : public GeometryError {
public:
    AdmissibilityError(std::size_t first, std::size_t second, double distance);

    std::size_t first() const { return first_; }
    std::size_t second() const { return second_; }
    double pair_distance() const { return distance_; }

private:
    std::size_t first_;
    std::size_t second_;
    double distance_;
};

/// A cell operation needed a bounded cell, or one without clip edges.
class UnboundedCellError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Finite window of a unit-disk packing: centers pairwise at least 2 apart.
class Packing {
public:
    /// Validates admissibility; throws AdmissibilityError naming the closest
    /// offending pair, or DomainError for a non-finite coordinate.
    explicit Packing(std::vector<Point> centers, double epsilon = kDefaultEpsilon);

    std::span<const Point> centers() const { return centers_; }
    const Point& operator[](std::size_t i) const { return centers_[i]; }
    std::size_t size() const { return centers_.size(); }
    double epsilon() const { return epsilon_; }

    /// Bucket index over the centers, shared by copies.
    const detail::SiteGrid& grid() const;

private:
    std::vector<Point> centers_;
    double epsilon_;
    std::shared_ptr<const detail::SiteGrid> grid_;
};

inline Packing make_packing(std::vector<Point> points, double epsilon = kDefaultEpsilon) {
    return Packing(std::move(points), epsilon);
}

/// Neighbor label of an edge that lies on the clipping square.
inline constexpr std::size_t kSyntheticEdge = kClipEdge;

struct VoronoiCell {
    std::size_t site_index = 0;
    ConvexPolygon polygon;
    bool bounded = false;
    /// neighbor_indices[i] generated polygon edge i, or kSyntheticEdge.
    std::vector<std::size_t> neighbor_indices;

    bool has_synthetic_edges() const;
};

struct VoronoiOptions {
    double bound = 64.0;
    double epsilon = kDefaultEpsilon;
    /// Above this many sites, candidate neighbors come from a uniform grid.
    std::size_t brute_force_limit = 10000;
};

/// Cell of site `i`: intersection of the bisector half-planes against every
/// other site, clipped to [-bound, bound]^2 around the origin.
VoronoiCell voronoi_cell(const Packing& pk, std::size_t i, const VoronoiOptions& options = {});

/// Triangle (site, neighbor, next neighbor) for a pair of consecutive cell edges.
struct ConstitutingTriangle {
    Point apex;
    Point base_start;
    Point base_end;
    std::size_t base_start_index = 0;
    std::size_t base_end_index = 0;
    double apex_angle = 0.0;  ///< counterclockwise from base_start to base_end, in (0, pi)
    double circumradius = 0.0;
    Point circumcenter;
};

/// One triangle per pair of consecutive neighbors, in counterclockwise
/// order. Triangle k shares cell vertex k + 1 as its circumcenter.
/// Throws UnboundedCellError for unbounded cells or cells with clip edges.
std::vector<ConstitutingTriangle> constituting_triangles(const VoronoiCell& cell,
                                                         const Packing& pk);

struct LemmaCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    bool applicable = true;
};

/// Structural checks of a single cell. Each margin is positive when the
/// property holds with room to spare.
struct LemmaReport {
    std::size_t site_index = 0;
    bool bounded = false;
    LemmaCheck disk_containment;    ///< min edge distance from the site minus 1
    LemmaCheck convexity;           ///< min sine of the turn angle at a cell vertex
    LemmaCheck reflection;          ///< max |reflected site - neighbor| over real edges
    LemmaCheck circumradius;        ///< min constituting circumradius minus 2/sqrt(3)

    bool all_passed() const;
};

LemmaReport check_lemmas(const Packing& pk, std::size_t i, const VoronoiOptions& options = {});

/// Reflection residual tolerance for the neighbor/edge correspondence.
inline constexpr double kReflectionTolerance = 1e-6;

}  // namespace vcell
