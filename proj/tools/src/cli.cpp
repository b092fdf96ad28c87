#include "cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "io.hpp"
#include "vcell/density.hpp"
#include "vcell/excess.hpp"
#include "vcell/optimizer.hpp"
#include "vcell/packing.hpp"

namespace vcell::cli {

namespace {

// Files are collected during a run and written once it has succeeded.
struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::optional<std::string>& path, std::string contents) {
        if (path) files.emplace_back(*path, std::move(contents));
    }
    void flush() const {
        for (const auto& [path, contents] : files) write_file(path, contents);
    }
};

std::string yes_no(bool b) { return b ? "1" : "0"; }

VoronoiOptions voronoi_options(const RunConfig& c) {
    VoronoiOptions o;
    o.bound = c.bound;
    o.epsilon = c.epsilon;
    return o;
}

Packing load_packing(const RunConfig& c) {
    if (!c.input_path) throw InputError("--input is required for this command");
    return Packing(read_points(*c.input_path), c.epsilon);
}

void require_site(const RunConfig& c, const Packing& pk) {
    if (c.site >= pk.size()) {
        throw InputError(fmt::format("--site {} is out of range for {} points", c.site, pk.size()));
    }
}

std::pair<Point, Point> scene_bounds(std::span<const Point> points, double margin) {
    Point lo{points[0].x, points[0].y};
    Point hi = lo;
    for (const Point& p : points) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return {Point{lo.x - margin, lo.y - margin}, Point{hi.x + margin, hi.y + margin}};
}

int cmd_cells(const RunConfig& c, std::ostream& out, Artifacts& files) {
    const Packing pk = load_packing(c);
    const VoronoiOptions vo = voronoi_options(c);
    std::string csv = "site,x,y,bounded,edges,area,excess,nonclose\n";
    std::vector<VoronoiCell> finite_cells;
    std::size_t bounded = 0;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        VoronoiCell cell = voronoi_cell(pk, i, vo);
        const bool finite = cell.bounded && !cell.has_synthetic_edges();
        const double area = polygon_area(cell.polygon);
        const std::size_t edges = cell.polygon.size();
        std::string excess_field = "";
        std::string nonclose_field = "";
        if (finite) {
            ++bounded;
            const ExcessReport report = excess(pk, i, c.threshold, vo);
            excess_field = format_real(report.excess);
            nonclose_field = std::to_string(report.nonclose_indices.size());
            finite_cells.push_back(std::move(cell));
        }
        csv += fmt::format("{},{},{},{},{},{},{},{}\n", i, format_real(pk[i].x),
                           format_real(pk[i].y), yes_no(finite), edges,
                           format_real(area), excess_field, nonclose_field);
    }
    out << fmt::format("{} sites, {} bounded cells\n", pk.size(), bounded);
    if (c.csv_path) {
        files.add(c.csv_path, csv);
    } else {
        out << csv;
    }
    if (c.svg_path) {
        const auto [lo, hi] = scene_bounds(pk.centers(), 2.5);
        SvgCanvas svg(lo, hi);
        for (const VoronoiCell& cell : finite_cells) svg.polygon(cell.polygon.vertices(), kCellStyle);
        for (const Point& p : pk.centers()) {
            svg.disk(p, 1.0, kDiskStyle);
            svg.dot(p, kSiteStyle);
        }
        files.add(c.svg_path, svg.str());
    }
    return kExitSuccess;
}

std::string lemma_field(const LemmaCheck& check) {
    return check.applicable ? format_real(check.residual) : std::string{};
}

int cmd_verify(const RunConfig& c, std::ostream& out, Artifacts& files) {
    const Packing pk = load_packing(c);
    const VoronoiOptions vo = voronoi_options(c);
    std::string csv =
        "site,bounded,disk_margin,convexity_margin,reflection_residual,circumradius_margin,passed\n";
    std::size_t failures = 0;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const LemmaReport r = check_lemmas(pk, i, vo);
        const bool ok = r.all_passed();
        if (!ok) ++failures;
        csv += fmt::format("{},{},{},{},{},{},{}\n", i, yes_no(r.bounded),
                           lemma_field(r.disk_containment), lemma_field(r.convexity),
                           lemma_field(r.reflection), lemma_field(r.circumradius), yes_no(ok));
    }
    out << fmt::format("admissible packing of {} sites; {} site(s) failed a lemma check\n",
                       pk.size(), failures);
    if (c.csv_path) {
        files.add(c.csv_path, csv);
    } else {
        out << csv;
    }
    return failures == 0 ? kExitSuccess : kExitValidation;
}

int cmd_decompose(const RunConfig& c, std::ostream& out, Artifacts& files) {
    const Packing pk = load_packing(c);
    require_site(c, pk);
    const VoronoiCell cell = voronoi_cell(pk, c.site, voronoi_options(c));
    if (!cell.bounded || cell.has_synthetic_edges()) {
        throw UnboundedCellError(fmt::format("cell of site {} is unbounded", c.site));
    }
    CertificateOptions co;
    co.decompose.epsilon = c.epsilon;
    const LowerBoundCertificate cert = lower_bound_certificate(cell.polygon, pk[c.site], co);

    std::string csv =
        "wedge,vx,vy,r,start_angle,angle,area,density,adjacent_prev,adjacent_next\n";
    const auto& wedges = cert.decomposition.wedges;
    for (std::size_t k = 0; k < wedges.size(); ++k) {
        const WedgeQuad& w = wedges[k];
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", k, format_real(w.v.x),
                           format_real(w.v.y), format_real(w.r), format_real(w.start_angle),
                           format_real(w.angle), format_real(w.area), format_real(w.density),
                           yes_no(w.adjacent_prev), yes_no(w.adjacent_next));
    }
    out << fmt::format("site {}: {} wedges, total angle {}\n", c.site, wedges.size(),
                       format_real(cert.decomposition.total_angle));
    out << fmt::format("polygon area {} >= wedge area {} >= density bound {} >= 2*sqrt(3) {}\n",
                       format_real(cert.polygon_area), format_real(cert.wedge_area),
                       format_real(cert.density_bound), format_real(cert.floor));
    out << fmt::format("slacks {} {} {}; extremal {}; regular hexagon {}\n",
                       format_real(cert.containment_slack), format_real(cert.truncation_slack),
                       format_real(cert.minimum_slack), yes_no(cert.is_extremal),
                       yes_no(cert.regular_hexagon));
    if (c.csv_path) {
        files.add(c.csv_path, csv);
    } else {
        out << csv;
    }
    if (c.svg_path) {
        const auto [lo, hi] = scene_bounds(cell.polygon.vertices(), 0.5);
        SvgCanvas svg(lo, hi);
        for (const WedgeQuad& w : wedges) {
            const std::vector<Point> quad{w.o, w.b_prev, w.c, w.v, w.a, w.b_next};
            svg.polygon(quad, kWedgeStyle);
        }
        svg.polygon(cell.polygon.vertices(), kCellStyle);
        svg.disk(pk[c.site], 1.0, kDiskStyle);
        svg.dot(pk[c.site], kSiteStyle);
        files.add(c.svg_path, svg.str());
    }
    return cert.sound() ? kExitSuccess : kExitValidation;
}

OptimizerOptions optimizer_options(const RunConfig& c) {
    OptimizerOptions o;
    o.restarts = c.restarts.value_or(16);
    o.seed = c.seed;
    o.feasibility_tolerance = c.epsilon;
    return o;
}

int cmd_minimize(const RunConfig& c, std::ostream& out, Artifacts& files) {
    const OptimizationResult r = minimize_area(c.n, optimizer_options(c));
    out << fmt::format("n {}: best area {} (2*sqrt(3) + {}), restart {}, residual {}\n", c.n,
                       format_real(r.best_area), format_real(r.best_area - kMinCellArea),
                       r.best_restart, format_real(r.constraint_residuals.max()));
    std::string csv = "vertex,theta,radius,x,y\n";
    const auto v = r.best.polygon.vertices();
    for (std::size_t k = 0; k < r.best.n; ++k) {
        csv += fmt::format("{},{},{},{},{}\n", k, format_real(r.best.thetas[k]),
                           format_real(r.best.radii[k]), format_real(v[k].x),
                           format_real(v[k].y));
    }
    if (c.csv_path) {
        files.add(c.csv_path, csv);
    } else {
        out << csv;
    }
    if (c.svg_path) {
        const auto [lo, hi] = scene_bounds(v, 0.5);
        SvgCanvas svg(lo, hi);
        svg.polygon(v, kCellStyle);
        svg.disk(Point{0.0, 0.0}, 1.0, kDiskStyle);
        svg.disk(Point{0.0, 0.0}, kMinVertexRadius, kDiskStyle);
        files.add(c.svg_path, svg.str());
    }
    return kExitSuccess;
}

int cmd_theorem(const RunConfig& c, std::ostream& out, Artifacts& files) {
    const TheoremReport report = verify_theorem(c.max_n, optimizer_options(c));
    std::string csv = "n,best_area,gap,extremal,regular_hexagon,certificate_slack,best_restart\n";
    for (const TheoremRow& row : report.rows) {
        csv += fmt::format("{},{},{},{},{},{},{}\n", row.n, format_real(row.best_area),
                           format_real(row.gap), yes_no(row.extremal),
                           yes_no(row.regular_hexagon), format_real(row.certificate_slack),
                           row.result.best_restart);
    }
    out << csv;
    out << fmt::format("only n = 6 extremal: {}; all rows >= 2*sqrt(3): {}\n",
                       report.only_hexagon_extremal() ? "yes" : "no",
                       report.all_above_floor() ? "yes" : "no");
    files.add(c.csv_path, csv);
    return report.only_hexagon_extremal() && report.all_above_floor() ? kExitSuccess
                                                                       : kExitValidation;
}

int cmd_counterexample(const RunConfig& c, std::ostream& out, Artifacts& files) {
    CounterexampleOptions o;
    o.threshold = c.threshold;
    o.budget = c.budget;
    o.seed = c.seed;
    o.restarts = c.restarts.value_or(64);
    o.voronoi = voronoi_options(c);
    const CounterexampleResult r = find_counterexample(o);

    out << fmt::format("threshold {}, budget {}, seed {}, restarts run {}, evaluations {}\n",
                       format_real(r.threshold), format_real(r.budget), r.seed,
                       r.restarts.size(), r.evaluations);
    if (!r.report) {
        out << "no restart produced a valid configuration\n";
        return kExitNotFound;
    }
    const ExcessReport& rep = *r.report;
    const Packing& pk = *r.configuration;
    out << fmt::format("{}: best excess {} from restart {} ({} neighbors, {} non-close)\n",
                       r.found ? "found" : "not found", format_real(rep.excess), r.best_restart,
                       rep.neighbor_indices.size(), rep.nonclose_indices.size());

    std::string csv = "point,x,y,distance,neighbor,nonclose\n";
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const auto it = std::find(rep.neighbor_indices.begin(), rep.neighbor_indices.end(), i);
        const bool is_neighbor = it != rep.neighbor_indices.end();
        const bool nonclose = std::find(rep.nonclose_indices.begin(), rep.nonclose_indices.end(),
                                        i) != rep.nonclose_indices.end();
        csv += fmt::format("{},{},{},{},{},{}\n", i, format_real(pk[i].x), format_real(pk[i].y),
                           format_real(distance(pk[0], pk[i])), yes_no(is_neighbor),
                           yes_no(nonclose));
    }
    csv += fmt::format("# excess,{}\n# restart,{}\n", format_real(rep.excess), r.best_restart);
    if (c.csv_path) {
        files.add(c.csv_path, csv);
    } else {
        out << csv;
    }

    std::string points = fmt::format(
        "# site 0 cell excess {} (threshold {}, seed {}, restart {})\n", format_real(rep.excess),
        format_real(r.threshold), r.seed, r.best_restart);
    for (const Point& p : pk.centers()) {
        points += format_real(p.x) + ',' + format_real(p.y) + '\n';
    }
    files.add(c.output_path, points);

    if (c.svg_path) {
        const auto [lo, hi] = scene_bounds(pk.centers(), 1.5);
        SvgCanvas svg(lo, hi);
        svg.polygon(rep.cell.polygon.vertices(), kCellStyle);
        for (std::size_t i = 0; i < pk.size(); ++i) {
            svg.disk(pk[i], 1.0, kDiskStyle);
            const bool nonclose = std::find(rep.nonclose_indices.begin(),
                                            rep.nonclose_indices.end(),
                                            i) != rep.nonclose_indices.end();
            svg.dot(pk[i], nonclose ? kHighlightStyle : kSiteStyle);
        }
        files.add(c.svg_path, svg.str());
    }
    return r.found ? kExitSuccess : kExitNotFound;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Artifacts files;
    int status = kExitSuccess;
    try {
        switch (config.command) {
            case Command::kCells: status = cmd_cells(config, out, files); break;
            case Command::kVerify: status = cmd_verify(config, out, files); break;
            case Command::kDecompose: status = cmd_decompose(config, out, files); break;
            case Command::kMinimize: status = cmd_minimize(config, out, files); break;
            case Command::kTheorem: status = cmd_theorem(config, out, files); break;
            case Command::kCounterexample: status = cmd_counterexample(config, out, files); break;
        }
        files.flush();
    } catch (const AdmissibilityError& e) {
        err << fmt::format("error: inadmissible input: points {} and {} are at distance {} < 2\n",
                           e.first(), e.second(), format_real(e.pair_distance()));
        return kExitValidation;
    } catch (const ConditionViolation& e) {
        err << fmt::format("error: condition {} fails: {}\n", to_string(e.condition()), e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return status;
}

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"Voronoi cells of unit-disk packings: construction, area bounds, searches"};
    app.require_subcommand(1);

    app.add_option("--input", config.input_path, "Points file (x,y per line, or .json pairs)");
    app.add_option("--site", config.site, "Site index for decompose");
    app.add_option("--bound", config.bound, "Half-width of the clipping square")->capture_default_str();
    app.add_option("--epsilon", config.epsilon, "Geometric tolerance")->capture_default_str();
    app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
    app.add_option("--restarts", config.restarts, "Restart count (default 16, or 64 for counterexample)");
    app.add_option("--n", config.n, "Vertex count for minimize")->capture_default_str();
    app.add_option("--max-n", config.max_n, "Largest vertex count for theorem")->capture_default_str();
    app.add_option("--threshold", config.threshold, "Non-close distance")->capture_default_str();
    app.add_option("--budget", config.budget, "Excess budget for counterexample")->capture_default_str();
    app.add_option("--csv", config.csv_path, "CSV report path");
    app.add_option("--svg", config.svg_path, "SVG figure path");
    app.add_option("--output", config.output_path, "Points file written by counterexample");

    const std::map<std::string, std::pair<Command, std::string>> commands{
        {"cells", {Command::kCells, "Cell areas and excesses of every site"}},
        {"verify", {Command::kVerify, "Admissibility and per-cell lemma checks"}},
        {"decompose", {Command::kDecompose, "Wedge decomposition and area certificate of one cell"}},
        {"minimize", {Command::kMinimize, "Smallest admissible n-gon area"}},
        {"theorem", {Command::kTheorem, "Minimal areas for n = 3..max-n"}},
        {"counterexample", {Command::kCounterexample, "Search for two non-close neighbors with small excess"}},
    };
    for (const auto& [name, entry] : commands) {
        const Command cmd = entry.first;
        app.add_subcommand(name, entry.second)->fallthrough()->callback([&config, cmd] {
            config.command = cmd;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitValidation;
    }
    return run(config, out, err);
}

}  // namespace vcell::cli
