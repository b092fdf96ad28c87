#include "vcell/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vcell {

namespace {

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

struct Pass {
    std::size_t iterations = 0;
    bool converged = false;
};

Pass run_pass(const Objective& f, Simplex& s, const NelderMeadOptions& opt,
              std::size_t& evaluations, std::size_t iteration_budget) {
    const std::size_t dim = s.points.size() - 1;
    const double d = static_cast<double>(dim);
    const double alpha = 1.0;
    const double gamma = opt.adaptive ? 1.0 + 2.0 / d : 2.0;
    const double rho = opt.adaptive ? 0.75 - 1.0 / (2.0 * d) : 0.5;
    const double sigma = opt.adaptive ? 1.0 - 1.0 / d : 0.5;

    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), expanded(dim);
    Pass pass;
    for (; pass.iterations < iteration_budget; ++pass.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Stable order keeps ties deterministic.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        double spread_x = 0.0;
        for (std::size_t k = 0; k <= dim; ++k) {
            for (std::size_t j = 0; j < dim; ++j) {
                spread_x = std::max(spread_x, std::abs(s.points[k][j] - s.points[best][j]));
            }
        }
        if (s.values[worst] - s.values[best] <= opt.f_tolerance && spread_x <= opt.x_tolerance) {
            pass.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= dim; ++k) {
            if (k == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.points[k][j];
        }
        for (double& c : centroid) c /= d;

        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t j = 0; j < dim; ++j) {
                out[j] = centroid[j] + coef * (centroid[j] - s.points[worst][j]);
            }
        };

        along(alpha, trial);
        const double f_reflect = eval(trial);
        if (f_reflect < s.values[best]) {
            along(alpha * gamma, expanded);
            const double f_expand = eval(expanded);
            if (f_expand < f_reflect) {
                s.points[worst] = expanded;
                s.values[worst] = f_expand;
            } else {
                s.points[worst] = trial;
                s.values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < s.values[second]) {
            s.points[worst] = trial;
            s.values[worst] = f_reflect;
            continue;
        }
        const bool outside = f_reflect < s.values[worst];
        along(outside ? alpha * rho : -rho, expanded);
        const double f_contract = eval(expanded);
        if (f_contract < (outside ? f_reflect : s.values[worst])) {
            s.points[worst] = expanded;
            s.values[worst] = f_contract;
            continue;
        }
        for (std::size_t k = 0; k <= dim; ++k) {
            if (k == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                s.points[k][j] = s.points[best][j] + sigma * (s.points[k][j] - s.points[best][j]);
            }
            s.values[k] = eval(s.points[k]);
        }
    }
    return pass;
}

Simplex build_simplex(const Objective& f, const std::vector<double>& x0, double step,
                      std::size_t& evaluations) {
    const std::size_t dim = x0.size();
    Simplex s;
    s.points.assign(dim + 1, x0);
    for (std::size_t j = 0; j < dim; ++j) s.points[j + 1][j] += step;
    s.values.resize(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
        ++evaluations;
        const double v = f(s.points[k]);
        s.values[k] = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }
    return s;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
    if (start.empty()) throw std::invalid_argument("nelder_mead: empty start point");
    NelderMeadResult result;
    result.x = std::move(start);
    result.value = f(result.x);
    result.evaluations = 1;

    double step = options.initial_step;
    for (std::size_t rebuild = 0; rebuild <= options.max_rebuilds; ++rebuild) {
        if (result.iterations >= options.max_iterations) break;
        Simplex s = build_simplex(f, result.x, step, result.evaluations);
        const Pass pass = run_pass(f, s, options, result.evaluations,
                                   options.max_iterations - result.iterations);
        result.iterations += pass.iterations;
        const auto best = static_cast<std::size_t>(
            std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
        const double improvement = result.value - s.values[best];
        if (s.values[best] <= result.value) {
            result.x = s.points[best];
            result.value = s.values[best];
        }
        if (pass.converged && improvement <= options.f_tolerance) {
            result.converged = true;
            break;
        }
        // Later rebuilds probe a smaller neighborhood.
        step = std::max(step * 0.5, 1e-6);
    }
    return result;
}

}  // namespace vcell
