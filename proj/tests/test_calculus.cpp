#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rineq/calculus.hpp"
#include "rineq/families.hpp"
#include "rineq/util.hpp"

using namespace rineq;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField field_from(std::function<Jet(std::span<const double>)> eval, bool positive = false) {
    ScalarField f;
    f.eval = std::move(eval);
    f.positivity_required = positive;
    f.name = "test-field";
    return f;
}

ScalarField sin_x1(int dim = 2) {
    return field_from([dim](std::span<const double> x) { return sin(Jet::seed(0, x[0], dim, 3)); });
}

ScalarField constant_field(double c, int dim = 2) {
    return field_from([c, dim](std::span<const double>) { return Jet::constant(c, dim, 3); },
                      c > 0);
}

} // namespace

TEST_CASE("point_calculus on flat T^2 with u = sin x1") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    ScalarField u = sin_x1();
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        double x[2] = {uniform(rng, 0, 2 * kPi), uniform(rng, 0, 2 * kPi)};
        PointCalculus pc = point_calculus(m, u, {x, 2});
        double s = std::sin(x[0]);
        CHECK(pc.h(0, 0, 2) == doctest::Approx(-s).epsilon(1e-12));
        CHECK(pc.h(0, 1, 2) == 0.0);
        CHECK(pc.h(1, 1, 2) == 0.0);
        CHECK(pc.lap == doctest::Approx(-s).epsilon(1e-12));
        CHECK(pc.hess_norm2 == doctest::Approx(s * s).epsilon(1e-12));
        CHECK(pc.grad_norm2 == doctest::Approx(std::cos(x[0]) * std::cos(x[0])).epsilon(1e-12));
        CHECK(pc.ric_grad_grad == 0.0);
    }
}

TEST_CASE("unit sphere: u = cos theta is a -2 eigenfunction of the Laplacian") {
    ManifoldSpec m = round_sphere(1.0);
    ScalarField u = field_from([](std::span<const double> x) {
        return cos(Jet::seed(0, x[0], 2, 3));
    });
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        double x[2] = {uniform(rng, 0.05, kPi - 0.05), uniform(rng, 0, 2 * kPi)};
        PointCalculus pc = point_calculus(m, u, {x, 2});
        CHECK(pc.lap == doctest::Approx(-2.0 * std::cos(x[0])).epsilon(1e-11));
    }
}

TEST_CASE("constant field: all covariant data vanish") {
    for (const auto& m : {flat_torus(2, {2 * kPi, 2 * kPi}), round_sphere(1.0)}) {
        ScalarField u = constant_field(3.7, m.dim());
        double x[2] = {1.1, 2.0};
        PointCalculus pc = point_calculus(m, u, {x, 2});
        CHECK(pc.grad_norm2 == 0.0);
        CHECK(pc.hess_norm2 == 0.0);
        CHECK(pc.lap == 0.0);
        for (double h : pc.hess) CHECK(h == 0.0);
    }
}

TEST_CASE("Hessian symmetry and trace consistency on random fields") {
    std::mt19937_64 rng(3);
    for (const auto& m : {round_sphere(1.0), torus_of_revolution(2.0, 0.5),
                          conformal_torus_sine(0.15)}) {
        for (int rep = 0; rep < 30; ++rep) {
            auto params = random_family_params("exp-trig", 4, m, rng);
            ScalarField u = function_family("exp-trig", params, m);
            auto x = random_interior_point(m, rng);
            GeometryData geo = compute_geometry(m, x);
            PointCalculus pc = point_calculus(geo, u.jet_at(x));
            int n = m.dim();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(pc.h(i, j, n) == pc.h(j, i, n)); // bitwise: same assembly
            double tr = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) tr += geo.ginv0(i, j) * pc.h(i, j, n);
            CHECK(std::abs(tr - pc.lap) < 1e-12 * std::max(1.0, std::abs(pc.lap)));
            CHECK(pc.grad_norm2 >= 0.0);
            CHECK(pc.hess_norm2 >= 0.0);
        }
    }
}

TEST_CASE("lemma_auxi: hand values on flat T^2, tiny residual elsewhere") {
    ManifoldSpec flat = flat_torus(2, {2 * kPi, 2 * kPi});
    double x[2] = {0.8, 1.7};
    CHECK(lemma_auxi_residual(flat, constant_field(2.0), {x, 2}) == 0.0);

    // u = sin x1: LHS = -2 sin cos^2 equals RHS exactly
    GeometryData geo = compute_geometry(flat, {x, 2});
    PointwiseChecks c = pointwise_checks(geo, sin_x1().jet_at({x, 2}));
    CHECK(std::abs(c.lemma_residual) < 1e-14);

    ManifoldSpec sphere = round_sphere(1.0);
    ScalarField u = field_from(
        [](std::span<const double> p) { return exp(cos(Jet::seed(0, p[0], 2, 3))); }, true);
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 50; ++rep) {
        double p[2] = {uniform(rng, 0.02, kPi - 0.02), uniform(rng, 0, 2 * kPi)};
        GeometryData g = compute_geometry(sphere, {p, 2});
        PointwiseChecks pc = pointwise_checks(g, u.jet_at({p, 2}));
        CHECK(std::abs(pc.lemma_residual) <= 1e-9 * pc.lemma_scale);
    }
}

TEST_CASE("bochner: flat hand computation and the curvature term on the sphere") {
    ManifoldSpec flat = flat_torus(2, {2 * kPi, 2 * kPi});
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        double x[2] = {uniform(rng, 0, 2 * kPi), uniform(rng, 0, 2 * kPi)};
        GeometryData geo = compute_geometry(flat, {x, 2});
        Jet uj = sin_x1().jet_at({x, 2});
        // terms: 1/2 lap|grad u|^2 = -cos 2x, g(grad u, grad lap u) = -cos^2 x
        Jet w2 = grad_norm2_jet(geo, uj, 2);
        CHECK(w2.value() == doctest::Approx(std::cos(x[0]) * std::cos(x[0])).epsilon(1e-12));
        PointwiseChecks c = pointwise_checks(geo, uj);
        CHECK(std::abs(c.bochner_residual) < 1e-13);
    }

    CHECK(bochner_residual(flat, constant_field(1.0), std::vector<double>{1.0, 2.0}) == 0.0);

    // sphere, u = cos theta: dropping Ric leaves residual ~ sin^2 theta
    ManifoldSpec sphere = round_sphere(1.0);
    ManifoldSpec mutated = with_zero_ricci(sphere);
    ScalarField u = field_from([](std::span<const double> p) {
        return cos(Jet::seed(0, p[0], 2, 3));
    });
    for (int rep = 0; rep < 30; ++rep) {
        double p[2] = {uniform(rng, 0.05, kPi - 0.05), uniform(rng, 0, 2 * kPi)};
        double full = bochner_residual(sphere, u, {p, 2});
        double dropped = bochner_residual(mutated, u, {p, 2});
        double st2 = std::sin(p[0]) * std::sin(p[0]);
        CHECK(std::abs(full) < 1e-11);
        CHECK(dropped == doctest::Approx(st2).epsilon(1e-9));
    }
}

TEST_CASE("log and sqrt identities") {
    ManifoldSpec flat = flat_torus(2, {2 * kPi, 2 * kPi});
    double x[2] = {2.9, 0.4};
    CHECK(log_identity_residual(flat, constant_field(5.0), {x, 2}) == 0.0);
    CHECK(sqrt_identity_residual(flat, constant_field(5.0), {x, 2}) == 0.0);

    // u = exp(sin x1): Delta log u = -sin x1 directly
    ScalarField u = field_from(
        [](std::span<const double> p) { return exp(sin(Jet::seed(0, p[0], 2, 3))); }, true);
    GeometryData geo = compute_geometry(flat, {x, 2});
    Jet lu = log(u.jet_at({x, 2}));
    PointCalculus pc = point_calculus(geo, lu);
    CHECK(pc.lap == doctest::Approx(-std::sin(x[0])).epsilon(1e-12));
    CHECK(std::abs(log_identity_residual(flat, u, {x, 2})) < 1e-10);

    ManifoldSpec sphere = round_sphere(1.0);
    ScalarField v = field_from(
        [](std::span<const double> p) { return cos(Jet::seed(0, p[0], 2, 3)) + 2.0; }, true);
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        double p[2] = {uniform(rng, 0.02, kPi - 0.02), uniform(rng, 0, 2 * kPi)};
        GeometryData g = compute_geometry(sphere, {p, 2});
        PointwiseChecks c = pointwise_checks(g, v.jet_at({p, 2}));
        CHECK(std::abs(c.log_residual) <= 1e-9 * c.log_scale);
        CHECK(std::abs(c.sqrt_residual) <= 1e-9 * c.sqrt_scale);
    }

    ScalarField bad = constant_field(-1.0);
    CHECK_THROWS_AS(log_identity_residual(flat, bad, std::vector<double>{0.1, 0.2}),
                    PositivityViolation);
}

TEST_CASE("trace bound |Delta u|^2 <= n |hess u|^2 with its equality case") {
    ManifoldSpec flat = flat_torus(2, {2 * kPi, 2 * kPi});
    auto [lhs0, rhs0] = trace_bound_check(flat, constant_field(1.0), std::vector<double>{1.0, 1.0});
    CHECK(lhs0 == 0.0);
    CHECK(rhs0 == 0.0);

    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        double x[2] = {uniform(rng, 0, 2 * kPi), uniform(rng, 0, 2 * kPi)};
        auto [lhs, rhs] = trace_bound_check(flat, sin_x1(), {x, 2});
        double s2 = std::sin(x[0]) * std::sin(x[0]); // |Delta u|^2 = sin^2, |H|^2 = sin^2
        CHECK(lhs == doctest::Approx(s2).epsilon(1e-12));
        CHECK(rhs == doctest::Approx(2 * s2).epsilon(1e-12));
        CHECK(lhs <= rhs + 1e-12 * rhs);
    }

    // equality when H is proportional to the identity: u = cos x1 + cos x2 on x1 = x2
    ScalarField u = field_from([](std::span<const double> p) {
        return cos(Jet::seed(0, p[0], 2, 3)) + cos(Jet::seed(1, p[1], 2, 3));
    });
    for (double t : {0.3, 1.2, 2.8}) {
        double x[2] = {t, t};
        auto [lhs, rhs] = trace_bound_check(flat, u, {x, 2});
        CHECK(lhs == doctest::Approx(rhs));
    }
}

TEST_CASE("trace bound holds across random curved-manifold sweeps") {
    std::mt19937_64 rng(8);
    for (const auto& m : {round_sphere(1.0), torus_of_revolution(2.0, 0.5)}) {
        for (int rep = 0; rep < 100; ++rep) {
            auto params = random_family_params("exp-trig", 4, m, rng);
            ScalarField u = function_family("exp-trig", params, m);
            auto x = random_interior_point(m, rng);
            GeometryData geo = compute_geometry(m, x);
            PointwiseChecks c = pointwise_checks(geo, u.jet_at(x));
            CHECK(c.trace_lhs <= c.trace_rhs + 1e-12 * std::max(1.0, c.trace_rhs));
        }
    }
}

TEST_CASE("derived fields: sqrt and log wrap the jets") {
    ManifoldSpec flat = flat_torus(2, {2 * kPi, 2 * kPi});
    ScalarField u = field_from(
        [](std::span<const double> p) { return exp(sin(Jet::seed(0, p[0], 2, 3)) * 2.0); }, true);
    auto [sqrt_u, log_u] = derived_fields(u);

    double x[2] = {1.3, 0.2};
    // log u = 2 sin x1 exactly
    Jet lu = log_u.eval({x, 2});
    CHECK(lu.value() == doctest::Approx(2 * std::sin(x[0])).epsilon(1e-13));
    CHECK(lu.d1(0) == doctest::Approx(2 * std::cos(x[0])).epsilon(1e-13));
    CHECK(lu.d1(1) == 0.0);

    // Hessian of sqrt(u) = e^{sin x1}: (1,1) slot is e^{sin}(cos^2 - sin)
    PointCalculus pc = point_calculus(flat, sqrt_u, {x, 2});
    double want = std::exp(std::sin(x[0])) *
                  (std::cos(x[0]) * std::cos(x[0]) - std::sin(x[0]));
    CHECK(pc.h(0, 0, 2) == doctest::Approx(want).epsilon(1e-12));

    ScalarField four = constant_field(4.0);
    auto [s4, l4] = derived_fields(four);
    CHECK(s4.eval(std::vector<double>{0.0, 0.0}).value() == doctest::Approx(2.0));

    ScalarField free_sign = sin_x1();
    CHECK_THROWS_AS(derived_fields(free_sign), PositivityViolation);
}

TEST_CASE("endomorphism norm: zero iff the Hessian vanishes") {
    ManifoldSpec m = round_sphere(1.0);
    ScalarField u = field_from([](std::span<const double> p) {
        return cos(Jet::seed(0, p[0], 2, 3)) + 2.0;
    }, true);
    double x[2] = {1.0, 0.5};
    PointCalculus pc = point_calculus(m, u, {x, 2});
    CHECK(pc.hess_norm2 > 0.0);
    PointCalculus pz = point_calculus(m, constant_field(1.0), {x, 2});
    CHECK(pz.hess_norm2 == 0.0);
}
