#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rineq/manifold.hpp"
#include "rineq/util.hpp"

using namespace rineq;

namespace {

constexpr double kPi = std::numbers::pi;

double gamma_at(const std::vector<double>& g, int dim, int k, int i, int j) {
    return g[static_cast<std::size_t>((k * dim + i) * dim + j)];
}

std::vector<double> interior_point(const ManifoldSpec& m, std::mt19937_64& rng) {
    std::vector<double> x(static_cast<std::size_t>(m.dim()));
    for (int ax = 0; ax < m.dim(); ++ax) {
        double lo = m.chart.lower[static_cast<std::size_t>(ax)];
        double hi = m.chart.upper[static_cast<std::size_t>(ax)];
        double margin = m.chart.periodic[static_cast<std::size_t>(ax)] ? 0.0 : 1e-2 * (hi - lo);
        x[static_cast<std::size_t>(ax)] = uniform(rng, lo + margin, hi - margin);
    }
    return x;
}

} // namespace

TEST_CASE("flat torus: volume fact, zero Christoffels, zero Ricci") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    CHECK(*m.known_volume == doctest::Approx(4 * kPi * kPi));
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 10; ++rep) {
        auto x = interior_point(m, rng);
        for (double v : christoffel_at(m, x)) CHECK(v == 0.0);
        for (double v : ricci_at(m, x)) CHECK(v == 0.0);
        CHECK(volume_density_at(m, x) == doctest::Approx(1.0));
    }
}

TEST_CASE("unit sphere: metric at the equator, Christoffels, Ricci = g") {
    ManifoldSpec m = round_sphere(1.0);
    double eq[2] = {kPi / 2, 1.0};
    GeometryData geo = compute_geometry(m, {eq, 2});
    CHECK(geo.g0(0, 0) == doctest::Approx(1.0));
    CHECK(geo.g0(1, 1) == doctest::Approx(1.0));
    CHECK(geo.g0(0, 1) == 0.0);

    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 25; ++rep) {
        auto x = interior_point(m, rng);
        double theta = x[0];
        auto gam = christoffel_at(m, x);
        // closed forms from symbolic differentiation of diag(1, sin^2 theta)
        CHECK(gamma_at(gam, 2, 0, 1, 1) ==
              doctest::Approx(-std::sin(theta) * std::cos(theta)).epsilon(1e-10));
        CHECK(gamma_at(gam, 2, 1, 0, 1) ==
              doctest::Approx(std::cos(theta) / std::sin(theta)).epsilon(1e-10));
        CHECK(gamma_at(gam, 2, 1, 1, 0) == gamma_at(gam, 2, 1, 0, 1));
        CHECK(gamma_at(gam, 2, 0, 0, 0) == doctest::Approx(0.0));
        CHECK(gamma_at(gam, 2, 0, 0, 1) == doctest::Approx(0.0));
        CHECK(gamma_at(gam, 2, 1, 0, 0) == doctest::Approx(0.0));
        CHECK(gamma_at(gam, 2, 1, 1, 1) == doctest::Approx(0.0));

        auto ric = ricci_at(m, x);
        GeometryData g = compute_geometry(m, x);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric[static_cast<std::size_t>(i * 2 + j)] ==
                      doctest::Approx(g.g0(i, j)).epsilon(1e-9));
        CHECK(volume_density_at(m, x) == doctest::Approx(std::sin(theta)));
    }
}

TEST_CASE("sphere of radius a: Ric = (1/a^2) g and volume density a^2 sin") {
    ManifoldSpec m = round_sphere(2.0);
    CHECK(*m.known_volume == doctest::Approx(16 * kPi));
    CHECK(*m.known_constant_curvature == doctest::Approx(0.25));
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        auto x = interior_point(m, rng);
        auto ric = ricci_at(m, x);
        GeometryData g = compute_geometry(m, x);
        for (int i = 0; i < 4; ++i)
            CHECK(ric[static_cast<std::size_t>(i)] ==
                  doctest::Approx(0.25 * g.g0(i / 2, i % 2)).epsilon(1e-9));
        CHECK(volume_density_at(m, x) == doctest::Approx(4.0 * std::sin(x[0])));
    }
}

TEST_CASE("torus of revolution: curvature sign flips with cos theta") {
    double R = 2.0, r = 0.5;
    ManifoldSpec m = torus_of_revolution(R, r);
    CHECK(*m.known_volume == doctest::Approx(4 * kPi * kPi * R * r));

    auto k_of = [&](double theta) { return std::cos(theta) / (r * (R + r * std::cos(theta))); };
    for (double theta : {0.0, kPi / 2, kPi, 2.2}) {
        double x[2] = {theta, 0.7};
        auto ric = ricci_at(m, {x, 2});
        GeometryData g = compute_geometry(m, {x, 2});
        double k = k_of(theta);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric[static_cast<std::size_t>(i * 2 + j)] ==
                      doctest::Approx(k * g.g0(i, j)).epsilon(1e-10));
        CHECK(volume_density_at(m, {x, 2}) ==
              doctest::Approx(r * (R + r * std::cos(theta))));
    }
    // top circle: K = 0; innermost circle: K = -1/(r(R-r))
    double top[2] = {kPi / 2, 0.0};
    for (double v : ricci_at(m, {top, 2})) CHECK(std::abs(v) < 1e-12);
    double inner[2] = {kPi, 0.0};
    auto ric_in = ricci_at(m, {inner, 2});
    GeometryData g_in = compute_geometry(m, {inner, 2});
    CHECK(ric_in[0] == doctest::Approx(-1.0 / (r * (R - r)) * g_in.g0(0, 0)).epsilon(1e-10));
}

TEST_CASE("conformal torus: constant phi reduces to flat, sine phi matches closed-form K") {
    ScalarField phi0;
    phi0.eval = [](std::span<const double>) { return Jet::constant(0.3, 2, 3); };
    ManifoldSpec flatish = conformal_torus(phi0);
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 5; ++rep) {
        auto x = interior_point(flatish, rng);
        for (double v : christoffel_at(flatish, x)) CHECK(std::abs(v) < 1e-14);
        for (double v : ricci_at(flatish, x)) CHECK(std::abs(v) < 1e-14);
        CHECK(volume_density_at(flatish, x) == doctest::Approx(std::exp(0.6)));
    }

    ManifoldSpec m = conformal_torus_sine(0.1);
    for (int rep = 0; rep < 25; ++rep) {
        auto x = interior_point(m, rng);
        double k = 0.1 * std::exp(-0.2 * std::sin(x[0])) * std::sin(x[0]);
        auto ric = ricci_at(m, x);
        GeometryData g = compute_geometry(m, x);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(ric[static_cast<std::size_t>(i * 2 + j)] - k * g.g0(i, j)) < 1e-10);
    }
}

TEST_CASE("torsion-freeness and Ricci symmetry on every catalog manifold") {
    std::mt19937_64 rng(5);
    std::vector<ManifoldSpec> catalog;
    catalog.push_back(flat_torus(3, {2 * kPi, 4.0, 2 * kPi}));
    catalog.push_back(round_sphere(1.0));
    catalog.push_back(torus_of_revolution(2.0, 0.5));
    catalog.push_back(conformal_torus_sine(0.1));
    for (const auto& m : catalog) {
        int n = m.dim();
        for (int rep = 0; rep < 20; ++rep) {
            auto x = interior_point(m, rng);
            auto gam = christoffel_at(m, x);
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        CHECK(gamma_at(gam, n, k, i, j) ==
                              doctest::Approx(gamma_at(gam, n, k, j, i)).epsilon(1e-12));
            auto ric = ricci_at(m, x);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(std::abs(ric[static_cast<std::size_t>(i * n + j)] -
                                   ric[static_cast<std::size_t>(j * n + i)]) < 1e-9);
        }
    }
}

TEST_CASE("constant-curvature identity on a 50x50 grid") {
    for (double radius : {1.0, 2.0}) {
        ManifoldSpec m = round_sphere(radius);
        double curvature = *m.known_constant_curvature;
        double worst = 0.0;
        for (int a = 1; a < 50; ++a) {
            for (int b = 0; b < 50; ++b) {
                double x[2] = {kPi * a / 50.0, 2 * kPi * b / 50.0};
                auto ric = ricci_at(m, {x, 2});
                GeometryData g = compute_geometry(m, {x, 2});
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        worst = std::max(worst,
                                         std::abs(ric[static_cast<std::size_t>(i * 2 + j)] -
                                                  curvature * g.g0(i, j)));
            }
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("metric compatibility: covariant derivative of g vanishes") {
    std::mt19937_64 rng(6);
    for (const auto& m : {round_sphere(1.5), torus_of_revolution(2.0, 0.5),
                          conformal_torus_sine(0.2)}) {
        int n = m.dim();
        for (int rep = 0; rep < 20; ++rep) {
            auto x = interior_point(m, rng);
            GeometryData geo = compute_geometry(m, x);
            for (int k = 0; k < n; ++k) {
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        double dg = geo.g[static_cast<std::size_t>(i * n + j)].d1(k);
                        double corr = 0.0;
                        for (int l = 0; l < n; ++l)
                            corr += geo.gamma0(l, k, i) * geo.g0(l, j) +
                                    geo.gamma0(l, k, j) * geo.g0(i, l);
                        CHECK(std::abs(dg - corr) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("metric jet inversion: 4x4 elimination path") {
    // SPD matrix with constant jets; inv * g must be the identity.
    std::mt19937_64 rng(7);
    int n = 4;
    std::vector<double> a(16, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = uniform(rng, -1.0, 1.0);
            a[static_cast<std::size_t>(i * n + j)] = v;
            a[static_cast<std::size_t>(j * n + i)] = v;
        }
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i * n + i)] += 4.0;
    MetricJets g(16, Jet(4, 1));
    for (int s = 0; s < 16; ++s) g[static_cast<std::size_t>(s)] = Jet::constant(a[static_cast<std::size_t>(s)], 4, 1);
    MetricJets inv = invert_metric_jets(g, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += inv[static_cast<std::size_t>(i * n + k)].value() *
                       a[static_cast<std::size_t>(k * n + j)];
            CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("singular metric raises SingularMetric at the sphere pole") {
    ManifoldSpec m = round_sphere(1.0);
    double pole[2] = {0.0, 0.3};
    CHECK_THROWS_AS(compute_geometry(m, {pole, 2}), SingularMetric);
    CHECK_THROWS_AS(volume_density_at(m, {pole, 2}), SingularMetric);
}

TEST_CASE("catalog constructors validate their parameters") {
    CHECK_THROWS_AS(round_sphere(-1.0), ConfigError);
    CHECK_THROWS_AS(torus_of_revolution(0.5, 2.0), ConfigError);
    CHECK_THROWS_AS(flat_torus(2, {1.0}), ConfigError);
    CHECK_THROWS_AS(flat_torus(1, {-2.0}), ConfigError);
}

TEST_CASE("conformal torus volume closed form (Bessel I0)") {
    ManifoldSpec m = conformal_torus_sine(0.1);
    CHECK(*m.known_volume ==
          doctest::Approx(4 * kPi * kPi * std::cyl_bessel_i(0.0, 0.2)).epsilon(1e-14));
}
