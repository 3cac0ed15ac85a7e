#include "rineq/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace rineq {

namespace {

void clamp_into(std::vector<double>& x, std::span<const double> lo, std::span<const double> hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

double diameter(const std::vector<std::vector<double>>& simplex) {
    double d = 0.0;
    for (std::size_t a = 1; a < simplex.size(); ++a)
        for (std::size_t i = 0; i < simplex[a].size(); ++i)
            d = std::max(d, std::abs(simplex[a][i] - simplex[0][i]));
    return d;
}

} // namespace

SimplexOutcome nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                    std::span<const double> x0, std::span<const double> box_lo,
                                    std::span<const double> box_hi, int max_evals,
                                    const SimplexOptions& opt) {
    const std::size_t n = x0.size();
    SimplexOutcome out;
    out.best_x.assign(x0.begin(), x0.end());

    auto eval = [&](const std::vector<double>& x) {
        double v = objective(x);
        ++out.evals;
        if (out.evals == 1 || v > out.best_value) {
            out.best_value = v;
            out.best_x = x;
        }
        return v;
    };

    if (n == 0) {
        if (max_evals >= 1) eval(std::vector<double>{});
        return out;
    }

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.reserve(n + 1);
    {
        std::vector<double> v(x0.begin(), x0.end());
        clamp_into(v, box_lo, box_hi);
        simplex.push_back(v);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> w = simplex[0];
            double step = opt.initial_step;
            // step inward when sitting at the upper bound
            if (w[i] + step > box_hi[i]) step = -step;
            w[i] += step;
            clamp_into(w, box_lo, box_hi);
            simplex.push_back(w);
        }
    }
    values.resize(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (out.evals >= max_evals) return out;
        values[i] = eval(simplex[i]);
    }

    std::vector<std::size_t> order(simplex.size());
    while (out.evals < max_evals) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        {
            std::vector<std::vector<double>> s2;
            std::vector<double> v2;
            s2.reserve(simplex.size());
            v2.reserve(values.size());
            for (std::size_t i : order) {
                s2.push_back(simplex[i]);
                v2.push_back(values[i]);
            }
            simplex.swap(s2);
            values.swap(v2);
        }
        if (diameter(simplex) < opt.diameter_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[a][i] / static_cast<double>(n);

        const std::vector<double>& worst = simplex[n];
        std::vector<double> reflected(n);
        for (std::size_t i = 0; i < n; ++i)
            reflected[i] = centroid[i] + opt.reflect * (centroid[i] - worst[i]);
        clamp_into(reflected, box_lo, box_hi);
        double fr = eval(reflected);

        if (fr > values[0]) {
            if (out.evals >= max_evals) break;
            std::vector<double> expanded(n);
            for (std::size_t i = 0; i < n; ++i)
                expanded[i] = centroid[i] + opt.expand * (reflected[i] - centroid[i]);
            clamp_into(expanded, box_lo, box_hi);
            double fe = eval(expanded);
            if (fe > fr) {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if (fr > values[n - 1]) {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        if (out.evals >= max_evals) break;
        std::vector<double> contracted(n);
        for (std::size_t i = 0; i < n; ++i)
            contracted[i] = centroid[i] + opt.contract * (worst[i] - centroid[i]);
        clamp_into(contracted, box_lo, box_hi);
        double fc = eval(contracted);
        if (fc > values[n]) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t a = 1; a <= n; ++a) {
            for (std::size_t i = 0; i < n; ++i)
                simplex[a][i] = simplex[0][i] + opt.shrink * (simplex[a][i] - simplex[0][i]);
            clamp_into(simplex[a], box_lo, box_hi);
            if (out.evals >= max_evals) return out;
            values[a] = eval(simplex[a]);
        }
    }
    return out;
}

} // namespace rineq
