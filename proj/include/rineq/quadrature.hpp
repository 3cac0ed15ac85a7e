#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rineq/field.hpp"
#include "rineq/manifold.hpp"

namespace rineq {

/// Tensor-product quadrature over a chart. Periodic axes carry the uniform
/// rule (spectrally accurate for smooth periodic integrands) with the
/// duplicated endpoint excluded; bounded axes carry Gauss-Legendre nodes,
/// which are interior, so singular endpoints are never touched.
struct Grid {
    std::vector<std::vector<double>> nodes;   // per axis
    std::vector<std::vector<double>> weights; // per axis
    std::vector<int> resolution;
    std::string manifold_name;

    int dim() const { return static_cast<int>(nodes.size()); }
    std::size_t size() const;
    /// Decode flat node index (axis 0 slowest) into chart coordinates.
    void point(std::size_t flat, std::span<double> out) const;
    double weight(std::size_t flat) const;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

Grid build_grid(const ManifoldSpec& m, std::span<const int> resolution);

/// Per-axis default: 64 on periodic axes (96 when the manifold has a
/// singular axis, 32 for tori of dim >= 3), 48 Gauss-Legendre on singular
/// axes.
std::vector<int> default_resolution(const ManifoldSpec& m);

std::vector<int> doubled(std::span<const int> resolution);

using PointFunction = std::function<double(std::span<const double>)>;

/// Sum of weight * f(x) * sqrt(det g) over all grid nodes, reduced by a
/// fixed pairwise tree so the result is independent of `jobs`.
double integrate(const ManifoldSpec& m, const Grid& grid, const PointFunction& f, int jobs = 1);

enum class BypartsSign {
    divergence, // residual of: int g(grad f, grad u) + int f Delta u = 0
    as_printed, // residual of: int g(grad f, grad u) - int f Delta u = 0
};

/// Integration-by-parts residual for the chosen sign convention. The
/// divergence convention vanishes under refinement on closed manifolds;
/// the printed one converges to 2 * int g(grad f, grad u).
double byparts_residual(const ManifoldSpec& m, const Grid& grid, const ScalarField& f,
                        const ScalarField& u, BypartsSign sign = BypartsSign::divergence,
                        int jobs = 1);

struct ConvergenceRow {
    std::vector<int> resolution;
    double value = 0.0;
    double delta = 0.0;     // value - previous value (0 for the first row)
    double est_order = 0.0; // log2 |delta_prev / delta| (0 while undefined)
};

/// Evaluate `quantity` on grids of increasing resolution and tabulate the
/// successive differences.
std::vector<ConvergenceRow> convergence_study(
    const ManifoldSpec& m, const std::function<double(const Grid&)>& quantity,
    std::span<const std::vector<int>> resolutions);

} // namespace rineq
