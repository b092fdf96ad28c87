#include "vcell/packing.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>

namespace vcell {

namespace detail {

// Bucket side; any two sites that can share a cell edge with a cell of
// radius R are at most 2R apart, so rings of buckets are scanned outward.
constexpr double kBucketSize = 4.0;

class SiteGrid {
public:
    explicit SiteGrid(std::span<const Point> sites) {
        for (std::size_t i = 0; i < sites.size(); ++i) {
            const auto [ix, iy] = bucket_of(sites[i]);
            min_x_ = std::min(min_x_, ix);
            max_x_ = std::max(max_x_, ix);
            min_y_ = std::min(min_y_, iy);
            max_y_ = std::max(max_y_, iy);
            buckets_[key(ix, iy)].push_back(i);
        }
    }

    static std::pair<std::int64_t, std::int64_t> bucket_of(Point p) {
        return {static_cast<std::int64_t>(std::floor(p.x / kBucketSize)),
                static_cast<std::int64_t>(std::floor(p.y / kBucketSize))};
    }

    // Visits the sites of every bucket at Chebyshev distance exactly `ring`
    // from bucket (cx, cy).
    template <typename Fn>
    void for_each_in_ring(std::int64_t cx, std::int64_t cy, std::int64_t ring, Fn&& fn) const {
        for (std::int64_t ix = cx - ring; ix <= cx + ring; ++ix) {
            for (std::int64_t iy = cy - ring; iy <= cy + ring; ++iy) {
                if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
                const auto it = buckets_.find(key(ix, iy));
                if (it == buckets_.end()) continue;
                for (std::size_t j : it->second) fn(j);
            }
        }
    }

    // Largest ring index that can still hold sites.
    std::int64_t max_ring(std::int64_t cx, std::int64_t cy) const {
        return std::max({cx - min_x_, max_x_ - cx, cy - min_y_, max_y_ - cy, std::int64_t{0}});
    }

private:
    static std::uint64_t key(std::int64_t ix, std::int64_t iy) {
        return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint32_t>(iy);
    }

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
    std::int64_t min_x_ = INT64_MAX, max_x_ = INT64_MIN;
    std::int64_t min_y_ = INT64_MAX, max_y_ = INT64_MIN;
};

}  // namespace detail

namespace {

using detail::kBucketSize;
using detail::SiteGrid;

HalfPlane bisector(Point site, Point other) {
    // Offset measured from the site keeps the half-distance exact.
    const Point d = other - site;
    const double len = norm(d);
    const Point n = d / len;
    return HalfPlane{n, dot(n, site) + 0.5 * len};
}

VoronoiCell cell_from_candidates(const Packing& pk, std::size_t i,
                                 std::span<const std::size_t> candidates,
                                 const VoronoiOptions& options) {
    std::vector<HalfPlane> planes;
    planes.reserve(candidates.size());
    for (std::size_t j : candidates) planes.push_back(bisector(pk[i], pk[j]));

    ClipResult clip = halfplane_intersection(planes, options.bound, options.epsilon);
    if (clip.status == ClipStatus::kEmpty || !clip.polygon) {
        throw GeometryError("voronoi_cell: empty cell, site lies outside the clipping square");
    }
    std::vector<std::size_t> neighbors;
    neighbors.reserve(clip.edge_sources.size());
    for (std::size_t src : clip.edge_sources) {
        neighbors.push_back(src == kClipEdge ? kSyntheticEdge : candidates[src]);
    }
    return VoronoiCell{i, std::move(*clip.polygon), clip.status == ClipStatus::kBounded,
                       std::move(neighbors)};
}

double max_vertex_distance(const ConvexPolygon& polygon, Point site) {
    double r = 0.0;
    for (const Point& v : polygon.vertices()) r = std::max(r, distance(v, site));
    return r;
}

}  // namespace

AdmissibilityError::AdmissibilityError(std::size_t first, std::size_t second, double dist)
    : GeometryError([&] {
          std::ostringstream msg;
          msg.precision(17);
          msg << "inadmissible pair (" << first << ", " << second << ") at distance " << dist
              << " < 2";
          return msg.str();
      }()),
      first_(first),
      second_(second),
      distance_(dist) {}

Packing::Packing(std::vector<Point> centers, double epsilon)
    : centers_(std::move(centers)), epsilon_(epsilon) {
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        if (!is_finite(centers_[i])) {
            std::ostringstream msg;
            msg << "packing center " << i << " is not finite";
            throw DomainError(msg.str());
        }
    }
    const double limit = 2.0 - epsilon_;
    std::size_t worst_i = 0, worst_j = 0;
    double worst = limit;
    auto consider = [&](std::size_t a, std::size_t b) {
        const double d = distance(centers_[a], centers_[b]);
        if (d < worst) {
            worst = d;
            worst_i = std::min(a, b);
            worst_j = std::max(a, b);
        }
    };
    grid_ = std::make_shared<const SiteGrid>(centers_);
    if (centers_.size() <= 2048) {
        for (std::size_t a = 0; a < centers_.size(); ++a) {
            for (std::size_t b = a + 1; b < centers_.size(); ++b) consider(a, b);
        }
    } else {
        // Violating pairs are < 2 apart, so they sit in adjacent buckets.
        const SiteGrid& grid = *grid_;
        for (std::size_t a = 0; a < centers_.size(); ++a) {
            const auto [cx, cy] = SiteGrid::bucket_of(centers_[a]);
            for (std::int64_t ring = 0; ring <= 1; ++ring) {
                grid.for_each_in_ring(cx, cy, ring, [&](std::size_t b) {
                    if (b > a) consider(a, b);
                });
            }
        }
    }
    if (worst < limit) throw AdmissibilityError(worst_i, worst_j, worst);
}

const detail::SiteGrid& Packing::grid() const { return *grid_; }

bool VoronoiCell::has_synthetic_edges() const {
    return std::find(neighbor_indices.begin(), neighbor_indices.end(), kSyntheticEdge) !=
           neighbor_indices.end();
}

VoronoiCell voronoi_cell(const Packing& pk, std::size_t i, const VoronoiOptions& options) {
    if (i >= pk.size()) throw std::out_of_range("voronoi_cell: site index out of range");
    const Point site = pk[i];
    if (std::abs(site.x) >= options.bound || std::abs(site.y) >= options.bound) {
        throw std::invalid_argument("voronoi_cell: site lies outside the clipping square");
    }
    if (pk.size() == 1) {
        // No bisectors: the cell is the whole clipping square.
        const double b = options.bound;
        return VoronoiCell{i, ConvexPolygon({{-b, -b}, {b, -b}, {b, b}, {-b, b}}, options.epsilon),
                           false, std::vector<std::size_t>(4, kSyntheticEdge)};
    }

    if (pk.size() <= options.brute_force_limit) {
        std::vector<std::size_t> candidates;
        candidates.reserve(pk.size() - 1);
        for (std::size_t j = 0; j < pk.size(); ++j) {
            if (j != i) candidates.push_back(j);
        }
        return cell_from_candidates(pk, i, candidates, options);
    }

    const SiteGrid& grid = pk.grid();
    const auto [cx, cy] = SiteGrid::bucket_of(site);
    const std::int64_t last_ring = grid.max_ring(cx, cy);
    std::vector<std::size_t> candidates;
    for (std::int64_t ring = 0;; ++ring) {
        grid.for_each_in_ring(cx, cy, ring, [&](std::size_t j) {
            if (j != i) candidates.push_back(j);
        });
        if (candidates.empty() && ring < last_ring) continue;
        VoronoiCell cell = cell_from_candidates(pk, i, candidates, options);
        // Every site within ring * kBucketSize of `site` has been seen.
        const double covered = static_cast<double>(ring) * kBucketSize;
        if (ring >= last_ring || 2.0 * max_vertex_distance(cell.polygon, site) < covered) {
            cell.site_index = i;
            return cell;
        }
    }
}

std::vector<ConstitutingTriangle> constituting_triangles(const VoronoiCell& cell,
                                                         const Packing& pk) {
    if (!cell.bounded) throw UnboundedCellError("constituting_triangles: cell is unbounded");
    if (cell.has_synthetic_edges()) {
        throw UnboundedCellError("constituting_triangles: cell has clip edges");
    }
    const Point apex = pk[cell.site_index];
    const std::size_t m = cell.neighbor_indices.size();
    std::vector<ConstitutingTriangle> triangles;
    triangles.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = cell.neighbor_indices[k];
        const std::size_t b = cell.neighbor_indices[(k + 1) % m];
        const Point ya = pk[a];
        const Point yb = pk[b];
        const Circle circle = circumcircle(apex, ya, yb, pk.epsilon());
        triangles.push_back(ConstitutingTriangle{apex, ya, yb, a, b,
                                                 ccw_angle(ya - apex, yb - apex), circle.radius,
                                                 circle.center});
    }
    return triangles;
}

bool LemmaReport::all_passed() const {
    return disk_containment.passed && convexity.passed && reflection.passed &&
           circumradius.passed;
}

LemmaReport check_lemmas(const Packing& pk, std::size_t i, const VoronoiOptions& options) {
    const VoronoiCell cell = voronoi_cell(pk, i, options);
    const ConvexPolygon& poly = cell.polygon;
    const Point site = pk[i];
    const double eps = options.epsilon;

    LemmaReport report;
    report.site_index = i;
    report.bounded = cell.bounded;

    const double containment = disk_containment_margin(poly, Circle(site, 1.0));
    report.disk_containment = {"unit_disk_containment", containment >= -eps, containment};

    double min_turn = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Point e0 = poly.vertex(k + 1) - poly.vertex(k);
        const Point e1 = poly.vertex(k + 2) - poly.vertex(k + 1);
        min_turn = std::min(min_turn, cross(e0, e1) / (norm(e0) * norm(e1)));
    }
    report.convexity = {"convexity", min_turn > -eps, min_turn};

    double worst_reflection = 0.0;
    bool any_real_edge = false;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const std::size_t j = cell.neighbor_indices[k];
        if (j == kSyntheticEdge) continue;
        any_real_edge = true;
        const auto [a, b] = poly.edge(k);
        worst_reflection = std::max(worst_reflection, distance(reflect(site, a, b), pk[j]));
    }
    report.reflection = {"neighbor_reflection", worst_reflection <= kReflectionTolerance,
                         worst_reflection, any_real_edge};

    if (cell.bounded && !cell.has_synthetic_edges()) {
        double min_radius = std::numeric_limits<double>::infinity();
        for (const ConstitutingTriangle& t : constituting_triangles(cell, pk)) {
            min_radius = std::min(min_radius, t.circumradius);
        }
        const double margin = min_radius - kMinVertexRadius;
        report.circumradius = {"constituting_circumradius", margin >= -eps, margin};
    } else {
        report.circumradius = {"constituting_circumradius", true, 0.0, false};
    }
    return report;
}

}  // namespace vcell
