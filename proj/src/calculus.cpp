#include "rineq/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace rineq {

namespace {

double max_scale(std::initializer_list<double> terms) {
    double s = 1.0;
    for (double t : terms) s = std::max(s, std::abs(t));
    return s;
}

// Trace of the covariant Hessian of a field given its order->=2 jet,
// using metric/Christoffel values only.
double laplacian_value(const GeometryData& geo, const Jet& w_jet) {
    const int n = geo.dim;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double hij = w_jet.d2(i, j);
            for (int k = 0; k < n; ++k) hij -= geo.gamma0(k, i, j) * w_jet.d1(k);
            acc += geo.ginv0(i, j) * hij;
        }
    }
    return acc;
}

} // namespace

PointCalculus point_calculus(const GeometryData& geo, const Jet& u_jet) {
    const int n = geo.dim;
    PointCalculus pc;
    pc.u = u_jet.value();
    pc.du.resize(static_cast<std::size_t>(n));
    pc.grad.assign(static_cast<std::size_t>(n), 0.0);
    pc.hess.assign(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) pc.du[static_cast<std::size_t>(i)] = u_jet.d1(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pc.grad[static_cast<std::size_t>(i)] +=
                geo.ginv0(i, j) * pc.du[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double h = u_jet.d2(i, j);
            for (int k = 0; k < n; ++k) h -= geo.gamma0(k, i, j) * pc.du[static_cast<std::size_t>(k)];
            pc.hess[static_cast<std::size_t>(i * n + j)] = h;
        }
    }
    for (int i = 0; i < n; ++i) {
        pc.grad_norm2 += pc.du[static_cast<std::size_t>(i)] * pc.grad[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) pc.lap += geo.ginv0(i, j) * pc.hess[static_cast<std::size_t>(i * n + j)];
    }
    // |H|^2 = g^{ik} g^{jl} H_ij H_kl via the index-raised Hessian H^i_j.
    std::vector<double> hraised(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                hraised[static_cast<std::size_t>(i * n + j)] +=
                    geo.ginv0(i, k) * pc.hess[static_cast<std::size_t>(k * n + j)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                pc.hess_norm2 += hraised[static_cast<std::size_t>(i * n + j)] *
                                 geo.ginv0(j, k) * pc.hess[static_cast<std::size_t>(k * n + i)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pc.ric_grad_grad += geo.ric(i, j) * pc.grad[static_cast<std::size_t>(i)] *
                                pc.grad[static_cast<std::size_t>(j)];
    return pc;
}

PointCalculus point_calculus(const ManifoldSpec& m, const ScalarField& u,
                             std::span<const double> x) {
    return point_calculus(compute_geometry(m, x), u.jet_at(x));
}

Jet grad_norm2_jet(const GeometryData& geo, const Jet& u_jet, int order) {
    const int n = geo.dim;
    Jet acc(u_jet.dim(), order);
    std::vector<Jet> du(static_cast<std::size_t>(n), Jet(u_jet.dim(), order));
    for (int i = 0; i < n; ++i) du[static_cast<std::size_t>(i)] = u_jet.derivative(i).truncated(order);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Jet term = geo.ginv[static_cast<std::size_t>(i * n + j)].truncated(order) *
                       (du[static_cast<std::size_t>(i)] * du[static_cast<std::size_t>(j)]);
            acc += (i == j) ? term : term * 2.0;
        }
    }
    return acc;
}

Jet laplacian_jet(const GeometryData& geo, const Jet& u_jet) {
    const int n = geo.dim;
    Jet acc(u_jet.dim(), 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Jet hij = u_jet.derivative(i).derivative(j).truncated(1);
            for (int k = 0; k < n; ++k) {
                hij -= geo.gamma_jet(k, i, j) * u_jet.derivative(k).truncated(1);
            }
            acc += geo.ginv[static_cast<std::size_t>(i * n + j)].truncated(1) * hij;
        }
    }
    return acc;
}

PointwiseChecks pointwiseChecksImpl(const GeometryData& geo, const Jet& u_jet,
                                    const PointCalculus& pc) {
    const int n = geo.dim;
    PointwiseChecks out;

    // Lemma: g(grad u, grad |grad u|^2) = 2 grad^2 u(grad u, grad u).
    Jet w1 = grad_norm2_jet(geo, u_jet, 1);
    double lhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lhs += geo.ginv0(i, j) * pc.du[static_cast<std::size_t>(i)] * w1.d1(j);
    double rhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rhs += pc.h(i, j, n) * pc.grad[static_cast<std::size_t>(i)] *
                   pc.grad[static_cast<std::size_t>(j)];
    rhs *= 2.0;
    out.lemma_residual = lhs - rhs;
    out.lemma_scale = max_scale({rhs});

    // Bochner: 1/2 Delta|grad u|^2 = g(grad u, grad Delta u) + |H|^2 + Ric(grad u, grad u).
    Jet w2 = grad_norm2_jet(geo, u_jet, 2);
    double t1 = 0.5 * laplacian_value(geo, w2);
    Jet lap1 = laplacian_jet(geo, u_jet);
    double t2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t2 += geo.ginv0(i, j) * pc.du[static_cast<std::size_t>(i)] * lap1.d1(j);
    double t3 = pc.hess_norm2;
    double t4 = pc.ric_grad_grad;
    out.bochner_residual = t1 - t2 - t3 - t4;
    out.bochner_scale = max_scale({t1, t2, t3, t4});

    // (log): Delta log u = Delta u / u - |grad u|^2 / u^2.
    // (sqrt): Delta sqrt u = Delta u / (2 sqrt u) - |grad u|^2 / (4 u^{3/2}).
    if (u_jet.value() > 0.0) {
        double u = pc.u;
        Jet lu = log(u_jet);
        double lap_log = laplacian_value(geo, lu);
        double a1 = pc.lap / u;
        double a2 = pc.grad_norm2 / (u * u);
        out.log_residual = lap_log - a1 + a2;
        out.log_scale = max_scale({lap_log, a1, a2});

        Jet su = sqrt(u_jet);
        double lap_sqrt = laplacian_value(geo, su);
        double ru = std::sqrt(u);
        double b1 = 0.5 * pc.lap / ru;
        double b2 = pc.grad_norm2 / (4.0 * u * ru);
        out.sqrt_residual = lap_sqrt - b1 + b2;
        out.sqrt_scale = max_scale({lap_sqrt, b1, b2});
    }

    out.trace_lhs = pc.lap * pc.lap;
    out.trace_rhs = static_cast<double>(n) * pc.hess_norm2;
    return out;
}

PointwiseChecks pointwise_checks(const GeometryData& geo, const Jet& u_jet) {
    return pointwiseChecksImpl(geo, u_jet, point_calculus(geo, u_jet));
}

double lemma_auxi_residual(const ManifoldSpec& m, const ScalarField& u,
                           std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    return pointwise_checks(geo, u.jet_at(x)).lemma_residual;
}

double bochner_residual(const ManifoldSpec& m, const ScalarField& u,
                        std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    return pointwise_checks(geo, u.jet_at(x)).bochner_residual;
}

double log_identity_residual(const ManifoldSpec& m, const ScalarField& u,
                             std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    Jet j = u.jet_at(x);
    if (!(j.value() > 0.0)) throw PositivityViolation("log identity requires u > 0");
    return pointwise_checks(geo, j).log_residual;
}

double sqrt_identity_residual(const ManifoldSpec& m, const ScalarField& u,
                              std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    Jet j = u.jet_at(x);
    if (!(j.value() > 0.0)) throw PositivityViolation("sqrt identity requires u > 0");
    return pointwise_checks(geo, j).sqrt_residual;
}

std::pair<double, double> trace_bound_check(const ManifoldSpec& m, const ScalarField& u,
                                            std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    PointwiseChecks c = pointwise_checks(geo, u.jet_at(x));
    return {c.trace_lhs, c.trace_rhs};
}

} // namespace rineq
