#include "vcell/optimizer.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "restart_pool.hpp"
#include "vcell/nelder_mead.hpp"

namespace vcell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kBarrier = 1e3;

// Chord deviation of vertex i from its two neighbors; positive when convex.
double vertex_deviation(std::span<const Point> v, std::size_t i) {
    const std::size_t n = v.size();
    const Point prev = v[(i + n - 1) % n];
    const Point next = v[(i + 1) % n];
    const Point chord = next - prev;
    return cross(chord, prev - v[i]) / norm(chord);
}

struct Shape {
    std::vector<double> thetas;
    std::vector<double> radii;
    double area = 0.0;  // after scaling onto the feasible set
    double barrier = 0.0;
};

// Parameters: n - 1 log gap weights (the first weight is pinned to 0), then
// n log radii. Overall scale is irrelevant because of the feasibility scaling.
Shape shape_from_parameters(std::size_t n, std::span<const double> x, double min_deviation) {
    Shape shape;
    std::vector<double> weights(n);
    weights[0] = 0.0;
    double max_u = 0.0;
    for (std::size_t k = 1; k < n; ++k) max_u = std::max(max_u, x[k - 1]);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = k == 0 ? 0.0 : x[k - 1];
        weights[k] = std::exp(u - max_u);
        total += weights[k];
    }
    shape.thetas.resize(n);
    double max_gap = 0.0;
    double angle = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        shape.thetas[k] = angle;
        const double gap = kTwoPi * weights[k] / total;
        max_gap = std::max(max_gap, gap);
        angle += gap;
    }
    if (max_gap >= kPi) {
        shape.barrier = kBarrier + (max_gap - kPi);
        return shape;
    }

    shape.radii.resize(n);
    std::vector<Point> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        shape.radii[k] = std::exp(x[n - 1 + k]);
        v[k] = from_polar(shape.radii[k], shape.thetas[k]);
    }

    double h_min = std::numeric_limits<double>::infinity();
    double r_min = std::numeric_limits<double>::infinity();
    double twice_area = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Point a = v[k];
        const Point b = v[(k + 1) % n];
        const double c = cross(a, b);
        twice_area += c;
        h_min = std::min(h_min, c / distance(a, b));
        r_min = std::min(r_min, shape.radii[k]);
    }
    if (!(h_min > 0.0)) {
        shape.barrier = kBarrier + 1.0 - h_min;
        return shape;
    }
    const double scale = std::max(1.0 / h_min, kMinVertexRadius / r_min);

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) worst = std::min(worst, scale * vertex_deviation(v, k));
    if (!(worst > min_deviation)) {
        shape.barrier = kBarrier + (min_deviation - worst);
        return shape;
    }

    for (double& r : shape.radii) r *= scale;
    shape.area = 0.5 * twice_area * scale * scale;
    return shape;
}

struct RestartOutcome {
    std::vector<double> thetas;
    std::vector<double> radii;
    double area = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::vector<PolygonCandidate> trace;
};

RestartOutcome run_restart(std::size_t n, std::size_t restart, const OptimizerOptions& opt) {
    const std::size_t dim = 2 * n - 1;
    // Leaves room for the candidate polygon to pass ConvexPolygon validation.
    const double min_deviation = 10.0 * opt.feasibility_tolerance;

    std::vector<double> start(dim, 0.0);
    if (restart > 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                          static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(restart)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> jitter(-opt.jitter, opt.jitter);
        for (int attempt = 0; attempt < 100; ++attempt) {
            std::vector<double> trial(dim);
            for (double& t : trial) t = jitter(rng);
            if (shape_from_parameters(n, trial, min_deviation).barrier == 0.0) {
                start = std::move(trial);
                break;
            }
        }
    }

    RestartOutcome out;
    std::size_t feasible_seen = 0;
    const Objective objective = [&](std::span<const double> x) {
        const Shape shape = shape_from_parameters(n, x, min_deviation);
        if (shape.barrier > 0.0) return shape.barrier;
        if (opt.trace_stride > 0 && feasible_seen++ % opt.trace_stride == 0) {
            out.trace.push_back(PolygonCandidate::from_polar(shape.thetas, shape.radii,
                                                             opt.feasibility_tolerance));
        }
        return shape.area;
    };

    NelderMeadOptions nm;
    nm.initial_step = 0.1;
    nm.f_tolerance = opt.area_tolerance;
    nm.x_tolerance = 1e-9;
    nm.max_iterations = opt.max_iterations;
    const NelderMeadResult res = nelder_mead(objective, start, nm);

    const Shape best = shape_from_parameters(n, res.x, min_deviation);
    out.iterations = res.iterations;
    out.evaluations = res.evaluations;
    out.converged = res.converged;
    if (best.barrier == 0.0) {
        out.thetas = best.thetas;
        out.radii = best.radii;
        out.area = best.area;
    }
    return out;
}

}  // namespace

double ConstraintResiduals::max() const {
    return std::max({convexity, disk, vertex_distance});
}

PolygonCandidate PolygonCandidate::from_polar(std::vector<double> thetas,
                                              std::vector<double> radii, double epsilon) {
    const std::size_t n = thetas.size();
    if (n < 3 || radii.size() != n) {
        throw std::invalid_argument("PolygonCandidate: need n >= 3 angles and n radii");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double next = k + 1 < n ? thetas[k + 1] : thetas[0] + kTwoPi;
        const double gap = next - thetas[k];
        if (!(gap > 0.0) || !(gap < kPi)) {
            std::ostringstream msg;
            msg << "PolygonCandidate: angular gap " << gap << " after vertex " << k
                << " is outside (0, pi)";
            throw std::invalid_argument(msg.str());
        }
        if (!(radii[k] > 0.0)) throw std::invalid_argument("PolygonCandidate: radius <= 0");
    }
    if (thetas[0] < 0.0 || thetas[n - 1] >= kTwoPi) {
        throw std::invalid_argument("PolygonCandidate: angles must lie in [0, 2*pi)");
    }
    std::vector<Point> vertices(n);
    for (std::size_t k = 0; k < n; ++k) vertices[k] = vcell::from_polar(radii[k], thetas[k]);
    ConvexPolygon polygon(std::move(vertices), epsilon);
    return PolygonCandidate{n, std::move(thetas), std::move(radii), std::move(polygon)};
}

ConstraintResiduals PolygonCandidate::residuals() const {
    ConstraintResiduals res;
    const auto v = polygon.vertices();
    double h_min = std::numeric_limits<double>::infinity();
    double dev_min = std::numeric_limits<double>::infinity();
    double r_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        h_min = std::min(h_min, polygon.inner_distance(k, Point{0.0, 0.0}));
        dev_min = std::min(dev_min, vertex_deviation(v, k));
        r_min = std::min(r_min, norm(v[k]));
    }
    res.convexity = std::max(0.0, -dev_min);
    res.disk = std::max(0.0, 1.0 - h_min);
    res.vertex_distance = std::max(0.0, kMinVertexRadius - r_min);
    return res;
}

OptimizationResult minimize_area(std::size_t n, const OptimizerOptions& options) {
    if (n < 3 || n > 12) throw std::invalid_argument("minimize_area: n must lie in [3, 12]");
    if (options.restarts < 1) throw std::invalid_argument("minimize_area: restarts must be >= 1");

    std::vector<RestartOutcome> outcomes(options.restarts);
    detail::run_restarts(options.restarts, options.threads,
                         [&](std::size_t k) { outcomes[k] = run_restart(n, k, options); });

    // Merge by (area, restart index) so completion order never matters.
    std::size_t best = 0;
    for (std::size_t k = 1; k < outcomes.size(); ++k) {
        if (outcomes[k].area < outcomes[best].area) best = k;
    }
    if (!std::isfinite(outcomes[best].area)) {
        throw std::runtime_error("minimize_area: no restart produced a feasible polygon");
    }

    OptimizationResult result{.best = PolygonCandidate::from_polar(outcomes[best].thetas,
                                                                   outcomes[best].radii,
                                                                   options.feasibility_tolerance)};
    result.best_area = polygon_area(result.best.polygon);
    result.constraint_residuals = result.best.residuals();
    result.restarts = options.restarts;
    result.best_restart = best;
    result.seed = options.seed;
    result.converged = outcomes[best].converged;
    for (RestartOutcome& o : outcomes) {
        result.iterations += o.iterations;
        result.evaluations += o.evaluations;
        for (PolygonCandidate& c : o.trace) result.trace.push_back(std::move(c));
    }
    return result;
}

bool TheoremReport::only_hexagon_extremal() const {
    bool hexagon_seen = false;
    for (const TheoremRow& row : rows) {
        if (row.extremal != (row.n == 6)) return false;
        hexagon_seen = hexagon_seen || row.n == 6;
    }
    return hexagon_seen;
}

bool TheoremReport::all_above_floor(double tolerance) const {
    return std::all_of(rows.begin(), rows.end(), [&](const TheoremRow& row) {
        return row.best_area >= kMinCellArea - tolerance;
    });
}

TheoremReport verify_theorem(std::size_t max_n, const OptimizerOptions& options) {
    if (max_n < 6 || max_n > 12) {
        throw std::invalid_argument("verify_theorem: max_n must lie in [6, 12]");
    }
    TheoremReport report;
    for (std::size_t n = 3; n <= max_n; ++n) {
        OptimizationResult result = minimize_area(n, options);
        const LowerBoundCertificate cert =
            lower_bound_certificate(result.best.polygon, Point{0.0, 0.0});
        const double area = result.best_area;
        report.rows.push_back(TheoremRow{.n = n,
                                         .best_area = area,
                                         .gap = area - kMinCellArea,
                                         .extremal = cert.is_extremal,
                                         .regular_hexagon = cert.regular_hexagon,
                                         .certificate_slack = cert.min_slack(),
                                         .result = std::move(result)});
    }
    return report;
}

}  // namespace vcell
