#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rineq {

/// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2), maximizing over a box. Candidates are clamped
/// into the box. Deterministic: no internal randomness, ties broken by
/// index order.
struct SimplexOptions {
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
    double diameter_tol = 1e-6;
    double initial_step = 0.5;
};

struct SimplexOutcome {
    std::vector<double> best_x;
    double best_value = 0.0;
    int evals = 0;
};

/// Maximize `objective` starting from x0; consumes at most `max_evals`
/// objective calls, stopping earlier once the simplex diameter falls below
/// options.diameter_tol.
SimplexOutcome nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                    std::span<const double> x0, std::span<const double> box_lo,
                                    std::span<const double> box_hi, int max_evals,
                                    const SimplexOptions& options = {});

} // namespace rineq
