#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vcell {

struct NelderMeadOptions {
    double initial_step = 0.1;
    /// Stop when the simplex values spread by less than this...
    double f_tolerance = 1e-10;
    /// ...and every vertex lies within this of the best one (max norm).
    double x_tolerance = 1e-10;
    std::size_t max_iterations = 100000;
    /// Dimension-dependent coefficients (Gao and Han), better above ~10 dimensions.
    bool adaptive = true;
    /// Rebuild the simplex around the best point until a pass improves the
    /// value by less than f_tolerance, at most this many times.
    std::size_t max_rebuilds = 30;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free local minimization. Deterministic for a deterministic objective.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace vcell
