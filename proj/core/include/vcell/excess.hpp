#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vcell/packing.hpp"

namespace vcell {

/// Neighbors farther than this from the site are called non-close.
inline constexpr double kNonCloseThreshold = 2.3;

/// Smallest possible excess of any cell over its unit disk, 2*sqrt(3) - pi.
inline const double kExcessFloor = 2.0 * std::sqrt(3.0) - kPi;

struct ExcessReport {
    VoronoiCell cell;
    double cell_area = 0.0;
    double excess = 0.0;  ///< cell_area - pi
    double threshold = kNonCloseThreshold;
    std::vector<std::size_t> neighbor_indices;  ///< one per cell edge, counterclockwise
    std::vector<double> neighbor_distances;     ///< parallel to neighbor_indices
    std::vector<std::size_t> nonclose_indices;  ///< neighbors with distance > threshold
};

/// Area excess of the cell of site `i` and its non-close neighbors.
/// Throws UnboundedCellError when the cell is unbounded or has clip edges.
ExcessReport excess(const Packing& pk, std::size_t i, double threshold = kNonCloseThreshold,
                    const VoronoiOptions& options = {});

struct CounterexampleOptions {
    double threshold = kNonCloseThreshold;
    double budget = 0.42;
    std::uint64_t seed = 0;
    std::size_t restarts = 64;
    /// Ring sizes tried, cycling through restarts.
    std::vector<std::size_t> neighbor_counts{6, 7, 5};
    /// Designated non-close neighbors sit at least this far beyond the threshold.
    double threshold_margin = 1e-6;
    /// A designated neighbor must own a cell edge at least this long.
    double min_edge_length = 1e-3;
    std::size_t max_iterations = 100000;
    std::size_t threads = 0;
    VoronoiOptions voronoi;
};

struct RestartSummary {
    std::size_t restart = 0;
    std::size_t neighbor_count = 0;
    double excess = 0.0;  ///< +inf when the restart ended without a valid configuration
    bool valid = false;
};

struct CounterexampleResult {
    /// Best excess < budget with at least two verified non-close neighbors.
    bool found = false;
    /// Best verified configuration: the site is index 0, the two designated
    /// non-close neighbors are indices 1 and 2. Absent only if no restart
    /// produced a valid configuration.
    std::optional<Packing> configuration;
    std::optional<ExcessReport> report;
    std::size_t best_restart = 0;
    std::uint64_t seed = 0;
    double threshold = kNonCloseThreshold;
    double budget = 0.42;
    std::size_t evaluations = 0;
    std::vector<RestartSummary> restarts;
};

/// Searches rings of neighbors around a site at the origin for a cell whose
/// excess is below `budget` while two neighbors sit beyond `threshold`.
/// Throws std::invalid_argument when threshold < 2 or budget <= 2*sqrt(3) - pi
/// (no cell can have a smaller excess).
///
/// Only the ring is modeled. More distant sites could only cut the cell
/// further, so a reported excess bounds the best achievable one from above.
CounterexampleResult find_counterexample(const CounterexampleOptions& options = {});

/// Re-verifies a configuration from scratch: admissible, bounded cell at
/// site 0, at least two non-close neighbors, and excess below budget.
bool verify_counterexample(std::span<const Point> points, double threshold, double budget,
                           const VoronoiOptions& options = {});

}  // namespace vcell
