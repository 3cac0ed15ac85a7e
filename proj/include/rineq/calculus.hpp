#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rineq/field.hpp"
#include "rineq/manifold.hpp"

namespace rineq {

/// Covariant point data for a scalar field u at one chart point:
/// gradient, covariant Hessian as a bilinear form, Laplace-Beltrami trace
/// (Delta = tr grad^2, negative spectrum on compact manifolds), and the
/// endomorphism (Frobenius) norm computed as the double contraction
/// g^{ik} g^{jl} H_ij H_kl.
struct PointCalculus {
    double u = 0.0;
    std::vector<double> du;   // d_i u (covector)
    std::vector<double> grad; // g^{ij} d_j u (vector)
    std::vector<double> hess; // H_ij = d_i d_j u - Gamma^k_ij d_k u, dim*dim
    double lap = 0.0;         // g^{ij} H_ij
    double grad_norm2 = 0.0;  // |grad u|^2
    double hess_norm2 = 0.0;  // |grad^2 u|^2
    double ric_grad_grad = 0.0;

    double h(int i, int j, int dim) const {
        return hess[static_cast<std::size_t>(i * dim + j)];
    }
};

PointCalculus point_calculus(const GeometryData& geo, const Jet& u_jet);
PointCalculus point_calculus(const ManifoldSpec& m, const ScalarField& u,
                             std::span<const double> x);

/// All five pointwise checks evaluated from shared intermediates.
/// Each residual comes with the scale its contract normalizes by
/// (max term magnitude, floored at 1).
struct PointwiseChecks {
    double lemma_residual = 0.0, lemma_scale = 1.0;
    double bochner_residual = 0.0, bochner_scale = 1.0;
    double log_residual = 0.0, log_scale = 1.0;
    double sqrt_residual = 0.0, sqrt_scale = 1.0;
    double trace_lhs = 0.0, trace_rhs = 0.0;
};

PointwiseChecks pointwise_checks(const GeometryData& geo, const Jet& u_jet);

/// g(grad u, grad |grad u|^2) - 2 grad^2 u(grad u, grad u).
double lemma_auxi_residual(const ManifoldSpec& m, const ScalarField& u,
                           std::span<const double> x);

/// 1/2 Delta|grad u|^2 - g(grad u, grad Delta u) - |grad^2 u|^2 - Ric(grad u, grad u).
double bochner_residual(const ManifoldSpec& m, const ScalarField& u,
                        std::span<const double> x);

/// Delta log u - Delta u / u + |grad u|^2 / u^2.
double log_identity_residual(const ManifoldSpec& m, const ScalarField& u,
                             std::span<const double> x);

/// Delta sqrt(u) - Delta u / (2 sqrt u) + |grad u|^2 / (4 u^{3/2}).
double sqrt_identity_residual(const ManifoldSpec& m, const ScalarField& u,
                              std::span<const double> x);

/// (|Delta u|^2, n |grad^2 u|^2); the first never exceeds the second.
std::pair<double, double> trace_bound_check(const ManifoldSpec& m, const ScalarField& u,
                                            std::span<const double> x);

/// Laplace-Beltrami of u as an order-1 jet, assembled from the order-3 jet
/// of u and the order-1 Christoffel jets (no nested field evaluation).
Jet laplacian_jet(const GeometryData& geo, const Jet& u_jet);

/// |grad u|^2 as a jet of the requested order (<= 2).
Jet grad_norm2_jet(const GeometryData& geo, const Jet& u_jet, int order);

} // namespace rineq
