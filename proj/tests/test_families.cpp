#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rineq/families.hpp"
#include "rineq/util.hpp"

using namespace rineq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("family spec parsing") {
    FamilySpec s = parse_family_spec("exp-trig:4");
    CHECK(s.name == "exp-trig");
    CHECK(s.n_params == 4);
    CHECK_THROWS_AS(parse_family_spec("exp-trig"), ConfigError);
    CHECK_THROWS_AS(parse_family_spec("exp-trig:x"), ConfigError);
    CHECK_THROWS_AS(parse_family_spec("gaussians:3"), ConfigError);
}

TEST_CASE("exp-trig: zero parameters give u == 1, first mode is sin x1") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    ScalarField one = function_family("exp-trig", std::vector<double>{}, m);
    double x[2] = {1.2, 0.7};
    Jet j = one.jet_at({x, 2});
    CHECK(j.value() == 1.0);
    for (int s = 1; s < j.size(); ++s) CHECK(j[s] == 0.0);

    ScalarField u = function_family("exp-trig", std::vector<double>{1.0, 0.0, 0.0, 0.0}, m);
    Jet uj = u.jet_at({x, 2});
    CHECK(uj.value() == doctest::Approx(std::exp(std::sin(x[0]))).epsilon(1e-14));
    CHECK(uj.d1(1) == 0.0);
    CHECK(uj.value() > 0.0);
}

TEST_CASE("torus mode ordering: sin block then cos block, then next frequency") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    double x[2] = {0.9, 1.8};
    CHECK(family_mode(0, m).eval({x, 2}).value() == doctest::Approx(std::sin(x[0])));
    CHECK(family_mode(1, m).eval({x, 2}).value() == doctest::Approx(std::sin(x[1])));
    CHECK(family_mode(2, m).eval({x, 2}).value() == doctest::Approx(std::cos(x[0])));
    CHECK(family_mode(3, m).eval({x, 2}).value() == doctest::Approx(std::cos(x[1])));
    CHECK(family_mode(4, m).eval({x, 2}).value() == doctest::Approx(std::sin(2 * x[0])));
}

TEST_CASE("periodicity of torus modes across the seam") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 4.0});
    for (int k = 0; k < 6; ++k) {
        ScalarField f = family_mode(k, m);
        for (double t : {0.3, 1.1}) {
            double a[2] = {0.0, t}, b[2] = {2 * kPi, t};
            CHECK(f.eval({a, 2}).value() == doctest::Approx(f.eval({b, 2}).value()).epsilon(1e-12));
            double c[2] = {t, 0.0}, d[2] = {t, 4.0};
            CHECK(f.eval({c, 2}).value() == doctest::Approx(f.eval({d, 2}).value()).epsilon(1e-12));
        }
    }
}

TEST_CASE("sphere modes: zonal and sectoral polynomials, mode cap") {
    ManifoldSpec m = round_sphere(1.0);
    double x[2] = {1.1, 2.3};
    double z = std::cos(x[0]), sx = std::sin(x[0]) * std::cos(x[1]),
           sy = std::sin(x[0]) * std::sin(x[1]);
    CHECK(family_mode(0, m).eval({x, 2}).value() == doctest::Approx(z));
    CHECK(family_mode(1, m).eval({x, 2}).value() == doctest::Approx(sx));
    CHECK(family_mode(2, m).eval({x, 2}).value() == doctest::Approx(sy));
    CHECK(family_mode(3, m).eval({x, 2}).value() == doctest::Approx(z * z));
    CHECK(family_mode(6, m).eval({x, 2}).value() == doctest::Approx(sx * sx - sy * sy));
    CHECK_THROWS_AS(family_mode(8, m), InvalidFamily);
    CHECK_THROWS_AS(function_family("exp-trig", std::vector<double>(9, 0.1), m), InvalidFamily);
}

TEST_CASE("shifted-trig: c is the first parameter and the margin is enforced") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    ScalarField u = function_family("shifted-trig", std::vector<double>{2.0, 1.0}, m);
    double x[2] = {kPi / 2, 0.0};
    CHECK(u.jet_at({x, 2}).value() == doctest::Approx(2.0 + 1.0)); // 2 + sin(pi/2)
    double y[2] = {3 * kPi / 2, 0.0};
    CHECK(u.jet_at({y, 2}).value() == doctest::Approx(1.0)); // minimum 2 - 1 >= margin

    CHECK_THROWS_AS(function_family("shifted-trig", std::vector<double>{1.0, 0.8}, m),
                    NonPositiveFamily);
    CHECK_THROWS_AS(function_family("shifted-trig", std::vector<double>{}, m), InvalidFamily);
}

TEST_CASE("sphere shifted-trig (2,1) is u = 2 + cos theta") {
    ManifoldSpec m = round_sphere(1.0);
    ScalarField u = function_family("shifted-trig", std::vector<double>{2.0, 1.0}, m);
    for (double theta : {0.2, 1.0, 2.9}) {
        double x[2] = {theta, 0.4};
        CHECK(u.jet_at({x, 2}).value() == doctest::Approx(2.0 + std::cos(theta)).epsilon(1e-14));
    }
}

TEST_CASE("peak family: positive, periodic, peaked at the chart center") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    ScalarField u = function_family("peak", std::vector<double>{2.0, 0.5}, m);
    double center[2] = {kPi, kPi}, far[2] = {0.05, 0.05};
    double uc = u.jet_at({center, 2}).value();
    double uf = u.jet_at({far, 2}).value();
    CHECK(uc == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(uf > 0.0);
    CHECK(uc > uf);
    double a[2] = {0.0, 1.0}, b[2] = {2 * kPi, 1.0};
    CHECK(u.jet_at({a, 2}).value() == doctest::Approx(u.jet_at({b, 2}).value()).epsilon(1e-12));
    CHECK_THROWS_AS(function_family("peak", std::vector<double>{}, m), InvalidFamily);
}

TEST_CASE("unknown family name raises InvalidFamily") {
    ManifoldSpec m = flat_torus(2, {2 * kPi, 2 * kPi});
    CHECK_THROWS_AS(function_family("mystery", std::vector<double>{1.0}, m), InvalidFamily);
}

TEST_CASE("random draws live in the box; shifted-trig draws respect the margin") {
    ManifoldSpec m = round_sphere(1.0);
    std::mt19937_64 rng(0);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_family_params("exp-trig", 4, m, rng);
        REQUIRE(p.size() == 4);
        for (double v : p) {
            CHECK(v >= kFamilyBoxLo);
            CHECK(v <= kFamilyBoxHi);
        }
        auto s = random_family_params("shifted-trig", 2, m, rng);
        CHECK_NOTHROW(function_family("shifted-trig", s, m));
    }
}

TEST_CASE("random interior points respect chart margins") {
    ManifoldSpec m = round_sphere(1.0);
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        auto x = random_interior_point(m, rng);
        CHECK(x[0] > 0.0);
        CHECK(x[0] < kPi);
        CHECK(x[1] >= 0.0);
        CHECK(x[1] < 2 * kPi);
    }
}
