#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcell/density.hpp"
#include "vcell/geometry.hpp"

namespace vcell {

/// Worst violation of each polygon condition; zero when satisfied.
struct ConstraintResiduals {
    double convexity = 0.0;        ///< (i): negative chord deviation at a vertex
    double disk = 0.0;             ///< (ii): 1 - min edge-line distance from o
    double vertex_distance = 0.0;  ///< (iii): 2/sqrt(3) - min vertex radius

    double max() const;
};

/// n-gon given by vertex directions and distances from o = (0, 0).
struct PolygonCandidate {
    std::size_t n = 0;
    std::vector<double> thetas;  ///< strictly increasing, thetas[0] == 0
    std::vector<double> radii;
    ConvexPolygon polygon;

    /// Throws InvalidPolygon when the vertex list is not strictly convex, or
    /// std::invalid_argument for mismatched sizes, non-increasing angles, or
    /// an angular gap of pi or more.
    static PolygonCandidate from_polar(std::vector<double> thetas, std::vector<double> radii,
                                       double epsilon = kDefaultEpsilon);

    ConstraintResiduals residuals() const;
};

struct OptimizerOptions {
    std::size_t restarts = 16;
    std::uint64_t seed = 0;
    double feasibility_tolerance = 1e-9;
    /// Per-step area change below which a local search counts as converged.
    double area_tolerance = 1e-10;
    std::size_t max_iterations = 100000;
    /// Half-width of the uniform jitter applied to the regular start.
    double jitter = 0.35;
    /// Worker threads for restarts; 0 picks the hardware concurrency.
    std::size_t threads = 0;
    /// When nonzero, every k-th feasible candidate evaluated is kept in the trace.
    std::size_t trace_stride = 0;
};

struct OptimizationResult {
    PolygonCandidate best;
    double best_area = 0.0;
    ConstraintResiduals constraint_residuals;
    std::size_t restarts = 0;
    std::size_t best_restart = 0;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::vector<PolygonCandidate> trace;
};

/// Smallest-area n-gon found satisfying (i) convexity, (ii) containing the
/// unit disk at the origin and (iii) vertex distances >= 2/sqrt(3).
///
/// Restart 0 starts from the regular n-gon; restart k > 0 from a jittered
/// copy drawn from a generator seeded by (seed, k), so a run with more
/// restarts only adds candidates. Each evaluated shape is scaled about the
/// origin onto the feasible set, which makes (ii) and (iii) hold exactly with
/// at least one of them tight; (i) is a hard barrier.
OptimizationResult minimize_area(std::size_t n, const OptimizerOptions& options = {});

struct TheoremRow {
    std::size_t n = 0;
    double best_area = 0.0;
    double gap = 0.0;  ///< best_area - 2*sqrt(3)
    bool extremal = false;
    bool regular_hexagon = false;
    double certificate_slack = 0.0;
    OptimizationResult result;
};

struct TheoremReport {
    std::vector<TheoremRow> rows;

    /// Exactly the n = 6 row is extremal.
    bool only_hexagon_extremal() const;
    /// Every row is at least 2*sqrt(3) - tolerance.
    bool all_above_floor(double tolerance = 1e-6) const;
};

/// Runs minimize_area for n = 3..max_n and certifies each winner.
/// Requires 6 <= max_n <= 12.
TheoremReport verify_theorem(std::size_t max_n, const OptimizerOptions& options = {});

}  // namespace vcell
