#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rineq/field.hpp"
#include "rineq/jet.hpp"

namespace rineq {

/// Rectangular chart domain. Periodic axes identify lower with upper;
/// singular axes have coordinate singularities at their endpoints (sphere
/// poles) and are only ever evaluated in the open interior.
struct ChartDomain {
    int dim = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<char> periodic;
    std::vector<char> singular;

    double span(int axis) const {
        return upper[static_cast<std::size_t>(axis)] - lower[static_cast<std::size_t>(axis)];
    }
    void validate() const;
};

/// Symmetric matrix of metric component jets g_ij, row-major dim*dim,
/// each jet of order 2.
using MetricJets = std::vector<Jet>;

struct MetricField {
    std::function<MetricJets(std::span<const double>)> eval;
};

/// A catalog manifold: chart + metric field + the closed-form facts known
/// about it. Immutable after construction; all *_at operations are pure.
struct ManifoldSpec {
    std::string name;    // catalog id, e.g. "sphere"
    std::string display; // e.g. "sphere:1.0"
    ChartDomain chart;
    MetricField metric;
    std::optional<double> known_volume;
    std::optional<double> known_constant_curvature;
    // Metric components independent of the chart point (flat tori). Lets
    // grid caches hold a single geometry record.
    bool constant_metric = false;
    // Test hook: report Ric = 0 everywhere, leaving everything else alone.
    bool zero_ricci = false;

    int dim() const { return chart.dim; }
};

ManifoldSpec flat_torus(int dim, std::vector<double> lengths);
ManifoldSpec round_sphere(double radius);
ManifoldSpec torus_of_revolution(double big_radius, double small_radius);
/// Conformal metric e^{2 phi} * delta on [0,2pi)^2; phi must be smooth and
/// periodic. known_volume is left unset (integral of e^{2 phi} in general).
ManifoldSpec conformal_torus(const ScalarField& phi);
/// Convenience instance with phi = amplitude * sin(x_1); its volume has the
/// closed form 4 pi^2 I_0(2 amplitude).
ManifoldSpec conformal_torus_sine(double amplitude);

/// Everything derived from the metric jets at one chart point. Jets keep
/// their construction orders: metric/inverse order 2, Christoffels order 1.
struct GeometryData {
    int dim = 0;
    MetricJets g;              // order 2
    MetricJets ginv;           // order 2
    std::vector<Jet> gamma;    // order 1; gamma[(k*dim + i)*dim + j] = Gamma^k_ij
    std::vector<double> ricci; // dim*dim values
    double sqrt_det_g = 0.0;

    double g0(int i, int j) const {
        return g[static_cast<std::size_t>(i * dim + j)].value();
    }
    double ginv0(int i, int j) const {
        return ginv[static_cast<std::size_t>(i * dim + j)].value();
    }
    double gamma0(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>((k * dim + i) * dim + j)].value();
    }
    const Jet& gamma_jet(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>((k * dim + i) * dim + j)];
    }
    double ric(int i, int j) const {
        return ricci[static_cast<std::size_t>(i * dim + j)];
    }
};

GeometryData compute_geometry(const ManifoldSpec& m, std::span<const double> x);

/// Gamma^k_{ij} values, indexed [(k*dim + i)*dim + j]; symmetric in (i, j).
std::vector<double> christoffel_at(const ManifoldSpec& m, std::span<const double> x);

/// Ric_{ij} values, row-major dim*dim; symmetric.
std::vector<double> ricci_at(const ManifoldSpec& m, std::span<const double> x);

/// sqrt(det g) at x; the chart density of dVol_g.
double volume_density_at(const ManifoldSpec& m, std::span<const double> x);

/// Invert a matrix of jets: cofactor formulas for dim <= 3, pivoted
/// Gauss-Jordan above. Throws SingularMetric when the determinant value is
/// below 1e-12 of the Hadamard bound.
MetricJets invert_metric_jets(const MetricJets& g, int dim);

/// with_zero_ricci(m): copy whose curvature reads as zero (mutation tests).
ManifoldSpec with_zero_ricci(ManifoldSpec m);

} // namespace rineq
