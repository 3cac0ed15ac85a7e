#include "rineq/manifold.hpp"

#include <cmath>
#include <numbers>

namespace rineq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMetricOrder = 2;

double det_value(const MetricJets& g, int dim) {
    if (dim == 1) return g[0].value();
    if (dim == 2) return g[0].value() * g[3].value() - g[1].value() * g[2].value();
    if (dim == 3) {
        auto v = [&](int i, int j) { return g[static_cast<std::size_t>(i * 3 + j)].value(); };
        return v(0, 0) * (v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1)) -
               v(0, 1) * (v(1, 0) * v(2, 2) - v(1, 2) * v(2, 0)) +
               v(0, 2) * (v(1, 0) * v(2, 1) - v(1, 1) * v(2, 0));
    }
    // Value-level determinant via elimination; only used for the density.
    std::vector<double> a(static_cast<std::size_t>(dim * dim));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g[i].value();
    double det = 1.0;
    for (int c = 0; c < dim; ++c) {
        int p = c;
        for (int r = c + 1; r < dim; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r * dim + c)]) >
                std::abs(a[static_cast<std::size_t>(p * dim + c)]))
                p = r;
        }
        if (p != c) {
            for (int j = 0; j < dim; ++j)
                std::swap(a[static_cast<std::size_t>(c * dim + j)],
                          a[static_cast<std::size_t>(p * dim + j)]);
            det = -det;
        }
        double piv = a[static_cast<std::size_t>(c * dim + c)];
        det *= piv;
        if (piv == 0.0) return 0.0;
        for (int r = c + 1; r < dim; ++r) {
            double f = a[static_cast<std::size_t>(r * dim + c)] / piv;
            for (int j = c; j < dim; ++j)
                a[static_cast<std::size_t>(r * dim + j)] -=
                    f * a[static_cast<std::size_t>(c * dim + j)];
        }
    }
    return det;
}

double hadamard_bound(const MetricJets& g, int dim) {
    double b = 1.0;
    for (int i = 0; i < dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim; ++j)
            row = std::max(row, std::abs(g[static_cast<std::size_t>(i * dim + j)].value()));
        b *= std::max(row, 1e-300);
    }
    return b;
}

void check_invertible(const MetricJets& g, int dim) {
    double det = det_value(g, dim);
    if (!(std::abs(det) > 1e-12 * hadamard_bound(g, dim))) {
        throw SingularMetric("metric not invertible within tolerance at this point");
    }
}

} // namespace

void ChartDomain::validate() const {
    if (dim < 1) throw Error("chart dim must be positive");
    for (int i = 0; i < dim; ++i) {
        if (!(lower[static_cast<std::size_t>(i)] < upper[static_cast<std::size_t>(i)]))
            throw Error("chart bounds must satisfy lower < upper");
        if (periodic[static_cast<std::size_t>(i)] && singular[static_cast<std::size_t>(i)])
            throw Error("a periodic axis cannot be singular");
    }
}

MetricJets invert_metric_jets(const MetricJets& g, int dim) {
    check_invertible(g, dim);
    if (dim == 1) {
        Jet one = Jet::constant(1.0, g[0].dim(), g[0].order());
        return {one / g[0]};
    }
    if (dim == 2) {
        Jet det = g[0] * g[3] - g[1] * g[2];
        MetricJets inv(4, Jet(g[0].dim(), g[0].order()));
        inv[0] = g[3] / det;
        inv[1] = -g[1] / det;
        inv[2] = -g[2] / det;
        inv[3] = g[0] / det;
        return inv;
    }
    if (dim == 3) {
        auto at = [&](int i, int j) -> const Jet& { return g[static_cast<std::size_t>(i * 3 + j)]; };
        auto cof = [&](int i, int j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
        };
        Jet det = at(0, 0) * cof(0, 0) + at(0, 1) * cof(0, 1) + at(0, 2) * cof(0, 2);
        MetricJets inv(9, Jet(g[0].dim(), g[0].order()));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                inv[static_cast<std::size_t>(i * 3 + j)] = cof(j, i) / det; // adjugate transpose
        return inv;
    }
    // Gauss-Jordan over the jet ring, pivoting on value magnitude.
    std::size_t n = static_cast<std::size_t>(dim);
    std::vector<Jet> a = g;
    MetricJets inv(n * n, Jet(g[0].dim(), g[0].order()));
    for (std::size_t i = 0; i < n; ++i)
        inv[i * n + i] = Jet::constant(1.0, g[0].dim(), g[0].order());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c].value()) > std::abs(a[p * n + c].value())) p = r;
        if (std::abs(a[p * n + c].value()) < 1e-14)
            throw SingularMetric("metric not invertible within tolerance at this point");
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[c * n + j], a[p * n + j]);
                std::swap(inv[c * n + j], inv[p * n + j]);
            }
        }
        Jet piv = a[c * n + c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c * n + j] = a[c * n + j] / piv;
            inv[c * n + j] = inv[c * n + j] / piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            Jet f = a[r * n + c];
            if (f.value() == 0.0) {
                bool all_zero = true;
                for (int s = 0; s < f.size(); ++s)
                    if (f[s] != 0.0) { all_zero = false; break; }
                if (all_zero) continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[c * n + j];
                inv[r * n + j] -= f * inv[c * n + j];
            }
        }
    }
    return inv;
}

GeometryData compute_geometry(const ManifoldSpec& m, std::span<const double> x) {
    const int n = m.dim();
    GeometryData out;
    out.dim = n;
    out.g = m.metric.eval(x);
    check_invertible(out.g, n);
    out.ginv = invert_metric_jets(out.g, n);

    double det = det_value(out.g, n);
    if (!(det > 0.0)) throw SingularMetric("metric determinant not positive");
    out.sqrt_det_g = std::sqrt(det);

    // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), order-1 jets.
    std::vector<Jet> dg(static_cast<std::size_t>(n * n * n), Jet(out.g[0].dim(), 1));
    auto dg_at = [&](int k, int i, int j) -> Jet& {
        return dg[static_cast<std::size_t>((k * n + i) * n + j)];
    };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dg_at(k, i, j) = out.g[static_cast<std::size_t>(i * n + j)].derivative(k);

    std::vector<Jet> ginv1(static_cast<std::size_t>(n * n), Jet(out.g[0].dim(), 1));
    for (std::size_t s = 0; s < ginv1.size(); ++s) ginv1[s] = out.ginv[s].truncated(1);

    out.gamma.assign(static_cast<std::size_t>(n * n * n), Jet(out.g[0].dim(), 1));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Jet acc(out.g[0].dim(), 1);
                for (int l = 0; l < n; ++l) {
                    Jet term = dg_at(i, j, l) + dg_at(j, i, l) - dg_at(l, i, j);
                    acc += ginv1[static_cast<std::size_t>(k * n + l)] * term;
                }
                out.gamma[static_cast<std::size_t>((k * n + i) * n + j)] = acc * 0.5;
            }
        }
    }

    // Ric_ik = d_j Gamma^j_ik - d_k Gamma^j_ij + Gamma^j_jm Gamma^m_ik
    //          - Gamma^j_km Gamma^m_ij.
    out.ricci.assign(static_cast<std::size_t>(n * n), 0.0);
    if (!m.zero_ricci) {
        auto gam = [&](int k, int i, int j) -> const Jet& {
            return out.gamma[static_cast<std::size_t>((k * n + i) * n + j)];
        };
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int j = 0; j < n; ++j) {
                    acc += gam(j, i, k).d1(j) - gam(j, i, j).d1(k);
                    for (int mm = 0; mm < n; ++mm) {
                        acc += gam(j, j, mm).value() * gam(mm, i, k).value() -
                               gam(j, k, mm).value() * gam(mm, i, j).value();
                    }
                }
                out.ricci[static_cast<std::size_t>(i * n + k)] = acc;
            }
        }
    }
    return out;
}

std::vector<double> christoffel_at(const ManifoldSpec& m, std::span<const double> x) {
    GeometryData geo = compute_geometry(m, x);
    std::vector<double> out(geo.gamma.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = geo.gamma[s].value();
    return out;
}

std::vector<double> ricci_at(const ManifoldSpec& m, std::span<const double> x) {
    return compute_geometry(m, x).ricci;
}

double volume_density_at(const ManifoldSpec& m, std::span<const double> x) {
    MetricJets g = m.metric.eval(x);
    double det = det_value(g, m.dim());
    if (!(std::abs(det) > 1e-12 * hadamard_bound(g, m.dim())) || !(det > 0.0))
        throw SingularMetric("metric determinant not positive at this point");
    return std::sqrt(det);
}

ManifoldSpec with_zero_ricci(ManifoldSpec m) {
    m.zero_ricci = true;
    return m;
}

ManifoldSpec flat_torus(int dim, std::vector<double> lengths) {
    if (dim < 1) throw ConfigError("flat torus dimension must be >= 1");
    if (dim > MultiIndexTable::kMaxDim) throw ConfigError("flat torus dimension too large");
    if (static_cast<int>(lengths.size()) != dim)
        throw ConfigError("flat torus needs one length per axis");
    double vol = 1.0;
    for (double len : lengths) {
        if (!(len > 0.0)) throw ConfigError("flat torus lengths must be positive");
        vol *= len;
    }
    ManifoldSpec m;
    m.name = "flat-torus";
    m.display = "flat-torus:" + std::to_string(dim);
    m.chart.dim = dim;
    m.chart.lower.assign(static_cast<std::size_t>(dim), 0.0);
    m.chart.upper = lengths;
    m.chart.periodic.assign(static_cast<std::size_t>(dim), 1);
    m.chart.singular.assign(static_cast<std::size_t>(dim), 0);
    m.chart.validate();
    m.known_volume = vol;
    m.known_constant_curvature = 0.0;
    m.constant_metric = true;
    m.metric.eval = [dim](std::span<const double>) {
        MetricJets g(static_cast<std::size_t>(dim * dim), Jet(dim, kMetricOrder));
        for (int i = 0; i < dim; ++i)
            g[static_cast<std::size_t>(i * dim + i)] = Jet::constant(1.0, dim, kMetricOrder);
        return g;
    };
    return m;
}

ManifoldSpec round_sphere(double radius) {
    if (!(radius > 0.0)) throw ConfigError("radius must be positive");
    ManifoldSpec m;
    m.name = "sphere";
    m.display = "sphere:" + std::to_string(radius);
    m.chart.dim = 2;
    m.chart.lower = {0.0, 0.0};
    m.chart.upper = {std::numbers::pi, kTwoPi};
    m.chart.periodic = {0, 1};
    m.chart.singular = {1, 0};
    m.chart.validate();
    m.known_volume = 4.0 * std::numbers::pi * radius * radius;
    m.known_constant_curvature = 1.0 / (radius * radius);
    double a2 = radius * radius;
    m.metric.eval = [a2](std::span<const double> x) {
        Jet theta = Jet::seed(0, x[0], 2, kMetricOrder);
        Jet st = sin(theta);
        MetricJets g(4, Jet(2, kMetricOrder));
        g[0] = Jet::constant(a2, 2, kMetricOrder);
        g[3] = (st * st) * a2;
        return g;
    };
    return m;
}

ManifoldSpec torus_of_revolution(double big_radius, double small_radius) {
    if (!(big_radius > small_radius && small_radius > 0.0))
        throw ConfigError("torus of revolution requires R > r > 0");
    ManifoldSpec m;
    m.name = "torus-rev";
    m.display = "torus-rev:" + std::to_string(big_radius) + "," + std::to_string(small_radius);
    m.chart.dim = 2;
    m.chart.lower = {0.0, 0.0};
    m.chart.upper = {kTwoPi, kTwoPi};
    m.chart.periodic = {1, 1};
    m.chart.singular = {0, 0};
    m.chart.validate();
    m.known_volume = 4.0 * std::numbers::pi * std::numbers::pi * big_radius * small_radius;
    double R = big_radius, r = small_radius;
    m.metric.eval = [R, r](std::span<const double> x) {
        Jet theta = Jet::seed(0, x[0], 2, kMetricOrder);
        Jet rho = cos(theta) * r + R;
        MetricJets g(4, Jet(2, kMetricOrder));
        g[0] = Jet::constant(r * r, 2, kMetricOrder);
        g[3] = rho * rho;
        return g;
    };
    return m;
}

ManifoldSpec conformal_torus(const ScalarField& phi) {
    ManifoldSpec m;
    m.name = "conformal-torus";
    m.display = "conformal-torus";
    m.chart.dim = 2;
    m.chart.lower = {0.0, 0.0};
    m.chart.upper = {kTwoPi, kTwoPi};
    m.chart.periodic = {1, 1};
    m.chart.singular = {0, 0};
    m.chart.validate();
    ScalarField phi_copy = phi;
    m.metric.eval = [phi_copy](std::span<const double> x) {
        Jet conf = exp(phi_copy.eval(x).truncated(kMetricOrder) * 2.0);
        MetricJets g(4, Jet(2, kMetricOrder));
        g[0] = conf;
        g[3] = conf;
        return g;
    };
    return m;
}

ManifoldSpec conformal_torus_sine(double amplitude) {
    ScalarField phi;
    phi.name = "phi";
    phi.eval = [amplitude](std::span<const double> x) {
        return sin(Jet::seed(0, x[0], 2, 3)) * amplitude;
    };
    ManifoldSpec m = conformal_torus(phi);
    m.display = "conformal-torus:" + std::to_string(amplitude);
    // volume of e^{2a sin x} dx dy over [0,2pi)^2
    m.known_volume = 4.0 * std::numbers::pi * std::numbers::pi *
                     std::cyl_bessel_i(0.0, 2.0 * std::abs(amplitude));
    return m;
}

std::pair<ScalarField, ScalarField> derived_fields(const ScalarField& u) {
    if (!u.positivity_required)
        throw PositivityViolation("derived_fields requires a positivity-enforced field");
    ScalarField s;
    s.name = "sqrt(" + u.name + ")";
    s.positivity_required = true;
    ScalarField base = u;
    s.eval = [base](std::span<const double> x) { return sqrt(base.jet_at(x)); };
    ScalarField l;
    l.name = "log(" + u.name + ")";
    l.positivity_required = false;
    l.eval = [base](std::span<const double> x) { return log(base.jet_at(x)); };
    return {s, l};
}

} // namespace rineq
