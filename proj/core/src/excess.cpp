#include "vcell/excess.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "restart_pool.hpp"
#include "vcell/density.hpp"
#include "vcell/nelder_mead.hpp"

namespace vcell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kBarrier = 1e6;
constexpr double kEdgePenalty = 10.0;

// Index layout of a search configuration: site, two designated neighbors, rest of the ring.
constexpr std::size_t kSite = 0;
constexpr std::size_t kFirstDesignated = 1;
constexpr std::size_t kSecondDesignated = 2;

struct Evaluation {
    std::vector<Point> points;
    double area = 0.0;
    double penalty = 0.0;
    bool valid = false;  // admissible, bounded, designated neighbors own edges
    double value() const { return area + penalty; }
};

double edge_length_of(const VoronoiCell& cell, std::size_t neighbor) {
    double total = 0.0;
    for (std::size_t k = 0; k < cell.neighbor_indices.size(); ++k) {
        if (cell.neighbor_indices[k] != neighbor) continue;
        const auto [a, b] = cell.polygon.edge(k);
        total += distance(a, b);
    }
    return total;
}

// Parameters: k polar angles, then k log radii. The ring is scaled about the
// site so the closest pair sits at distance 2 or the nearer designated
// neighbor sits at threshold + margin, whichever binds.
Evaluation evaluate(std::size_t k, std::span<const double> x, const CounterexampleOptions& opt) {
    Evaluation ev;
    std::vector<Point> ring(k);
    for (std::size_t j = 0; j < k; ++j) ring[j] = from_polar(std::exp(x[k + j]), x[j]);

    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
        d_min = std::min(d_min, norm(ring[a]));
        for (std::size_t b = a + 1; b < k; ++b) d_min = std::min(d_min, distance(ring[a], ring[b]));
    }
    if (!(d_min > 1e-9) || !std::isfinite(d_min)) {
        ev.area = kBarrier;
        return ev;
    }
    const double designated = std::min(norm(ring[0]), norm(ring[1]));
    const double far = opt.threshold + opt.threshold_margin;
    const double scale = std::max(2.0 / d_min, far / designated);

    ev.points.reserve(k + 1);
    ev.points.push_back(Point{0.0, 0.0});
    for (const Point& p : ring) ev.points.push_back(scale * p);

    try {
        const Packing pk(ev.points, opt.voronoi.epsilon);
        const VoronoiCell cell = voronoi_cell(pk, kSite, opt.voronoi);
        ev.area = polygon_area(cell.polygon);
        bool owns_edges = true;
        for (std::size_t j : {kFirstDesignated, kSecondDesignated}) {
            const double len = edge_length_of(cell, j);
            if (len < opt.min_edge_length) {
                owns_edges = false;
                ev.penalty += kEdgePenalty * (opt.min_edge_length - len);
            }
        }
        ev.valid = cell.bounded && !cell.has_synthetic_edges() && owns_edges;
        if (ev.valid && ev.area - kPi < kExcessFloor - 1e-9) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "cell excess " << ev.area - kPi << " undercuts 2*sqrt(3) - pi";
            throw InvariantViolation(msg.str());
        }
    } catch (const AdmissibilityError&) {
        ev.area = kBarrier;
        ev.valid = false;
    }
    return ev;
}

std::vector<double> start_point(std::size_t k, std::size_t restart,
                                const CounterexampleOptions& opt) {
    std::vector<double> x(2 * k);
    std::vector<double> slots(k);
    for (std::size_t j = 0; j < k; ++j) slots[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
    std::vector<double> radii(k, 2.0);
    // Designated neighbors: slot 0 and the opposite slot on the first
    // restart, random slots with jitter afterwards.
    std::size_t partner = k / 2;
    if (restart > 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                          static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(restart)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<std::size_t> pick(1, k - 1);
        std::uniform_real_distribution<double> angle_jitter(-0.25, 0.25);
        std::uniform_real_distribution<double> radius_jitter(0.0, 0.3);
        partner = pick(rng);
        for (double& s : slots) s += angle_jitter(rng) * kTwoPi / static_cast<double>(k);
        for (double& r : radii) r += radius_jitter(rng);
    }
    const double far = opt.threshold + 0.01;
    std::vector<std::size_t> order{0, partner};
    for (std::size_t j = 0; j < k; ++j) {
        if (j != 0 && j != partner) order.push_back(j);
    }
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t slot = order[j];
        x[j] = slots[slot];
        x[k + j] = std::log(j < 2 ? std::max(far, radii[slot]) : radii[slot]);
    }
    return x;
}

struct RestartOutcome {
    RestartSummary summary;
    std::vector<Point> points;
    std::size_t evaluations = 0;
};

}  // namespace

ExcessReport excess(const Packing& pk, std::size_t i, double threshold,
                    const VoronoiOptions& options) {
    VoronoiCell cell = voronoi_cell(pk, i, options);
    if (!cell.bounded || cell.has_synthetic_edges()) {
        std::ostringstream msg;
        msg << "excess: cell of site " << i << " is unbounded";
        throw UnboundedCellError(msg.str());
    }
    ExcessReport report{.cell = std::move(cell)};
    report.cell_area = polygon_area(report.cell.polygon);
    report.excess = report.cell_area - kPi;
    report.threshold = threshold;
    for (std::size_t j : report.cell.neighbor_indices) {
        if (std::find(report.neighbor_indices.begin(), report.neighbor_indices.end(), j) !=
            report.neighbor_indices.end()) {
            continue;
        }
        const double d = distance(pk[i], pk[j]);
        report.neighbor_indices.push_back(j);
        report.neighbor_distances.push_back(d);
        if (d > threshold) report.nonclose_indices.push_back(j);
    }
    return report;
}

bool verify_counterexample(std::span<const Point> points, double threshold, double budget,
                           const VoronoiOptions& options) {
    try {
        const Packing pk(std::vector<Point>(points.begin(), points.end()), options.epsilon);
        const ExcessReport report = excess(pk, kSite, threshold, options);
        return report.nonclose_indices.size() >= 2 && report.excess < budget;
    } catch (const GeometryError&) {
        return false;
    }
}

CounterexampleResult find_counterexample(const CounterexampleOptions& options) {
    if (!(options.threshold >= 2.0)) {
        throw std::invalid_argument("find_counterexample: threshold must be at least 2");
    }
    if (!(options.budget > kExcessFloor)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "find_counterexample: budget " << options.budget
            << " is not above the minimum possible excess 2*sqrt(3) - pi = " << kExcessFloor;
        throw std::invalid_argument(msg.str());
    }
    if (options.restarts < 1 || options.neighbor_counts.empty()) {
        throw std::invalid_argument("find_counterexample: need restarts and neighbor counts");
    }
    for (std::size_t k : options.neighbor_counts) {
        if (k < 3 || k > 12) throw std::invalid_argument("find_counterexample: ring size out of range");
    }

    CounterexampleResult result;
    result.seed = options.seed;
    result.threshold = options.threshold;
    result.budget = options.budget;

    auto finish = [&](const std::vector<Point>& points, std::size_t restart) {
        const Packing pk(points, options.voronoi.epsilon);
        ExcessReport report = excess(pk, kSite, options.threshold, options.voronoi);
        result.found = report.nonclose_indices.size() >= 2 && report.excess < options.budget;
        result.best_restart = restart;
        result.configuration.emplace(pk);
        result.report.emplace(std::move(report));
    };

    // The unsearched start of restart 0 may already qualify.
    {
        const std::size_t k = options.neighbor_counts.front();
        const Evaluation ev = evaluate(k, start_point(k, 0, options), options);
        result.evaluations += 1;
        if (ev.valid && ev.area - kPi < options.budget) {
            result.restarts.push_back({0, k, ev.area - kPi, true});
            finish(ev.points, 0);
            if (result.found) return result;
        }
    }

    std::vector<RestartOutcome> outcomes(options.restarts);
    detail::run_restarts(options.restarts, options.threads, [&](std::size_t r) {
        const std::size_t k = options.neighbor_counts[r % options.neighbor_counts.size()];
        RestartOutcome& out = outcomes[r];
        out.summary = {r, k, std::numeric_limits<double>::infinity(), false};
        const Objective objective = [&](std::span<const double> x) {
            return evaluate(k, x, options).value();
        };
        NelderMeadOptions nm;
        nm.initial_step = 0.05;
        nm.f_tolerance = 1e-12;
        nm.x_tolerance = 1e-10;
        nm.max_iterations = options.max_iterations;
        const NelderMeadResult res = nelder_mead(objective, start_point(k, r, options), nm);
        out.evaluations = res.evaluations;
        const Evaluation ev = evaluate(k, res.x, options);
        if (ev.valid) {
            out.summary.excess = ev.area - kPi;
            out.summary.valid = true;
            out.points = ev.points;
        }
    });

    std::optional<std::size_t> best;
    result.restarts.clear();
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.evaluations += outcomes[r].evaluations;
        result.restarts.push_back(outcomes[r].summary);
        if (!outcomes[r].summary.valid) continue;
        if (!best || outcomes[r].summary.excess < outcomes[*best].summary.excess) best = r;
    }
    if (best) finish(outcomes[*best].points, *best);
    return result;
}

}  // namespace vcell
