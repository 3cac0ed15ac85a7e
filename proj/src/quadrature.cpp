#include "rineq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "rineq/calculus.hpp"
#include "rineq/util.hpp"

namespace rineq {

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (const auto& ax : nodes) n *= ax.size();
    return n;
}

void Grid::point(std::size_t flat, std::span<double> out) const {
    for (int ax = dim() - 1; ax >= 0; --ax) {
        std::size_t m = nodes[static_cast<std::size_t>(ax)].size();
        out[static_cast<std::size_t>(ax)] = nodes[static_cast<std::size_t>(ax)][flat % m];
        flat /= m;
    }
}

double Grid::weight(std::size_t flat) const {
    double w = 1.0;
    for (int ax = dim() - 1; ax >= 0; --ax) {
        std::size_t m = weights[static_cast<std::size_t>(ax)].size();
        w *= weights[static_cast<std::size_t>(ax)][flat % m];
        flat /= m;
    }
    return w;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    // Roots of P_n by Newton iteration from the Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

Grid build_grid(const ManifoldSpec& m, std::span<const int> resolution) {
    if (static_cast<int>(resolution.size()) != m.dim())
        throw ConfigError("resolution needs one entry per chart axis");
    Grid grid;
    grid.manifold_name = m.display;
    grid.resolution.assign(resolution.begin(), resolution.end());
    grid.nodes.resize(static_cast<std::size_t>(m.dim()));
    grid.weights.resize(static_cast<std::size_t>(m.dim()));
    for (int ax = 0; ax < m.dim(); ++ax) {
        int n = resolution[static_cast<std::size_t>(ax)];
        if (n < 4) throw ConfigError("resolution must be >= 4 per axis");
        double lo = m.chart.lower[static_cast<std::size_t>(ax)];
        double hi = m.chart.upper[static_cast<std::size_t>(ax)];
        auto& xs = grid.nodes[static_cast<std::size_t>(ax)];
        auto& ws = grid.weights[static_cast<std::size_t>(ax)];
        if (m.chart.periodic[static_cast<std::size_t>(ax)]) {
            double h = (hi - lo) / n;
            xs.resize(static_cast<std::size_t>(n));
            ws.assign(static_cast<std::size_t>(n), h);
            for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + h * i;
        } else {
            gauss_legendre(n, xs, ws);
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int i = 0; i < n; ++i) {
                xs[static_cast<std::size_t>(i)] = mid + half * xs[static_cast<std::size_t>(i)];
                ws[static_cast<std::size_t>(i)] *= half;
            }
        }
    }
    return grid;
}

std::vector<int> default_resolution(const ManifoldSpec& m) {
    bool has_singular = false;
    for (char s : m.chart.singular) has_singular |= (s != 0);
    std::vector<int> res(static_cast<std::size_t>(m.dim()));
    for (int ax = 0; ax < m.dim(); ++ax) {
        if (!m.chart.periodic[static_cast<std::size_t>(ax)]) {
            res[static_cast<std::size_t>(ax)] = 48;
        } else if (has_singular) {
            res[static_cast<std::size_t>(ax)] = 96;
        } else {
            res[static_cast<std::size_t>(ax)] = m.dim() >= 3 ? 32 : 64;
        }
    }
    return res;
}

std::vector<int> doubled(std::span<const int> resolution) {
    std::vector<int> out(resolution.begin(), resolution.end());
    for (int& r : out) r *= 2;
    return out;
}

double integrate(const ManifoldSpec& m, const Grid& grid, const PointFunction& f, int jobs) {
    std::size_t n = grid.size();
    std::vector<double> terms(n);
    const int dim = grid.dim();
    parallel_for(n, jobs, [&](std::size_t i) {
        double x[MultiIndexTable::kMaxDim];
        grid.point(i, {x, static_cast<std::size_t>(dim)});
        std::span<const double> xs{x, static_cast<std::size_t>(dim)};
        terms[i] = grid.weight(i) * volume_density_at(m, xs) * f(xs);
    });
    return pairwise_sum(terms);
}

double byparts_residual(const ManifoldSpec& m, const Grid& grid, const ScalarField& f,
                        const ScalarField& u, BypartsSign sign, int jobs) {
    const int n = m.dim();
    double s = (sign == BypartsSign::divergence) ? 1.0 : -1.0;
    PointFunction integrand = [&](std::span<const double> x) {
        GeometryData geo = compute_geometry(m, x);
        Jet fj = f.jet_at(x);
        PointCalculus uc = point_calculus(geo, u.jet_at(x));
        double grad_pair = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                grad_pair += geo.ginv0(i, j) * fj.d1(i) * uc.du[static_cast<std::size_t>(j)];
        return grad_pair + s * fj.value() * uc.lap;
    };
    return integrate(m, grid, integrand, jobs);
}

std::vector<ConvergenceRow> convergence_study(
    const ManifoldSpec& m, const std::function<double(const Grid&)>& quantity,
    std::span<const std::vector<int>> resolutions) {
    if (resolutions.size() < 3)
        throw ConfigError("convergence study needs at least 3 resolutions");
    std::vector<ConvergenceRow> rows;
    rows.reserve(resolutions.size());
    for (const auto& res : resolutions) {
        Grid grid = build_grid(m, res);
        ConvergenceRow row;
        row.resolution = res;
        row.value = quantity(grid);
        if (!rows.empty()) {
            row.delta = row.value - rows.back().value;
            if (rows.size() >= 2 && row.delta != 0.0 && rows.back().delta != 0.0) {
                row.est_order = std::log2(std::abs(rows.back().delta / row.delta));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace rineq
