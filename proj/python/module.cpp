#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rineq/calculus.hpp"
#include "rineq/cli.hpp"
#include "rineq/families.hpp"
#include "rineq/quadrature.hpp"
#include "rineq/verifier.hpp"

namespace py = pybind11;
using namespace rineq;

namespace {

std::vector<int> pick_resolution(const ManifoldSpec& m,
                                 const std::optional<std::vector<int>>& resolution) {
    return resolution ? *resolution : default_resolution(m);
}

py::dict functionals_dict(const Functionals& f) {
    py::dict d;
    d["A"] = f.A;
    d["B"] = f.B;
    d["D"] = f.D;
    d["E"] = f.E;
    d["F"] = f.F;
    d["G"] = f.G;
    d["H"] = f.H;
    return d;
}

py::dict ratios_dict(const RatioReport& r) {
    py::dict d;
    d["main"] = r.ratio_main;
    d["bernis"] = r.ratio_bernis;
    d["cross"] = r.ratio_cross;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "covariant calculus on compact manifolds and the Hessian-inequality verifier";

    py::register_exception<PositivityViolation>(m, "PositivityViolation");
    py::register_exception<SingularMetric>(m, "SingularMetric");
    py::register_exception<DegenerateRatio>(m, "DegenerateRatio");
    py::register_exception<InvalidFamily>(m, "InvalidFamily");
    py::register_exception<NonPositiveFamily>(m, "NonPositiveFamily");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<ManifoldSpec>(m, "Manifold")
        .def_readonly("name", &ManifoldSpec::name)
        .def_readonly("display", &ManifoldSpec::display)
        .def_property_readonly("dim", &ManifoldSpec::dim)
        .def_property_readonly("known_volume",
                               [](const ManifoldSpec& s) { return s.known_volume; })
        .def_property_readonly("known_constant_curvature",
                               [](const ManifoldSpec& s) { return s.known_constant_curvature; })
        .def("__repr__",
             [](const ManifoldSpec& s) { return "<Manifold " + s.display + ">"; });

    py::class_<ScalarField>(m, "Field")
        .def_readonly("name", &ScalarField::name)
        .def("value", [](const ScalarField& f, std::vector<double> x) { return f.value_at(x); },
             py::arg("x"));

    m.def("manifold", &parse_manifold_spec, py::arg("spec"),
          "Build a catalog manifold from a spec string, e.g. 'sphere:1.0'.");
    m.def("flat_torus", &flat_torus, py::arg("dim"), py::arg("lengths"));
    m.def("sphere", &round_sphere, py::arg("radius") = 1.0);
    m.def("torus_of_revolution", &torus_of_revolution, py::arg("R"), py::arg("r"));
    m.def("conformal_torus", &conformal_torus_sine, py::arg("amplitude") = 0.1);

    m.def(
        "family_field",
        [](const ManifoldSpec& man, const std::string& family, std::vector<double> params) {
            return function_family(family, params, man);
        },
        py::arg("manifold"), py::arg("family"), py::arg("params"),
        "Positive field from a named family: exp-trig, shifted-trig, peak.");
    m.def(
        "mode_field",
        [](const ManifoldSpec& man, int k) { return family_mode(k, man); },
        py::arg("manifold"), py::arg("k"));

    m.def(
        "christoffel",
        [](const ManifoldSpec& man, std::vector<double> x) { return christoffel_at(man, x); },
        py::arg("manifold"), py::arg("x"),
        "Christoffel symbols, flat list indexed [(k*dim + i)*dim + j].");
    m.def(
        "ricci",
        [](const ManifoldSpec& man, std::vector<double> x) { return ricci_at(man, x); },
        py::arg("manifold"), py::arg("x"), "Ricci tensor, flat row-major list.");
    m.def(
        "volume_density",
        [](const ManifoldSpec& man, std::vector<double> x) { return volume_density_at(man, x); },
        py::arg("manifold"), py::arg("x"));

    m.def(
        "point_calculus",
        [](const ManifoldSpec& man, const ScalarField& u, std::vector<double> x) {
            PointCalculus pc = point_calculus(man, u, x);
            py::dict d;
            d["u"] = pc.u;
            d["du"] = pc.du;
            d["grad"] = pc.grad;
            d["hess"] = pc.hess;
            d["lap"] = pc.lap;
            d["grad_norm2"] = pc.grad_norm2;
            d["hess_norm2"] = pc.hess_norm2;
            d["ric_grad_grad"] = pc.ric_grad_grad;
            return d;
        },
        py::arg("manifold"), py::arg("field"), py::arg("x"));

    m.def(
        "residuals",
        [](const ManifoldSpec& man, const ScalarField& u, std::vector<double> x) {
            GeometryData geo = compute_geometry(man, x);
            PointwiseChecks c = pointwise_checks(geo, u.jet_at(x));
            py::dict d;
            d["lemma"] = c.lemma_residual / c.lemma_scale;
            d["bochner"] = c.bochner_residual / c.bochner_scale;
            d["log"] = c.log_residual / c.log_scale;
            d["sqrt"] = c.sqrt_residual / c.sqrt_scale;
            d["trace_lhs"] = c.trace_lhs;
            d["trace_rhs"] = c.trace_rhs;
            return d;
        },
        py::arg("manifold"), py::arg("field"), py::arg("x"),
        "Normalized pointwise residuals of the Lemma/Bochner/log/sqrt identities.");

    m.def(
        "volume",
        [](const ManifoldSpec& man, std::optional<std::vector<int>> resolution) {
            Grid g = build_grid(man, pick_resolution(man, resolution));
            return integrate(man, g, [](std::span<const double>) { return 1.0; });
        },
        py::arg("manifold"), py::arg("resolution") = std::nullopt);

    m.def(
        "functionals",
        [](const ManifoldSpec& man, const ScalarField& u,
           std::optional<std::vector<int>> resolution) {
            Grid g = build_grid(man, pick_resolution(man, resolution));
            return functionals_dict(eval_functionals(man, g, u));
        },
        py::arg("manifold"), py::arg("field"), py::arg("resolution") = std::nullopt,
        "The seven proof-chain integrals A, B, D, E, F, G, H.");

    m.def(
        "identity_chain",
        [](const ManifoldSpec& man, const ScalarField& u,
           std::optional<std::vector<int>> resolution, double tolerance, bool as_printed) {
            Grid g = build_grid(man, pick_resolution(man, resolution));
            Functionals f = eval_functionals(man, g, u);
            auto reports = identity_chain_reports(
                f, g.resolution, tolerance,
                as_printed ? ChainCoefficients::as_printed : ChainCoefficients::derived);
            py::list out;
            for (const auto& r : reports) {
                py::dict d;
                d["name"] = r.identity_name;
                d["lhs"] = r.lhs;
                d["rhs"] = r.rhs;
                d["abs_residual"] = r.abs_residual;
                d["rel_residual"] = r.rel_residual;
                d["pass"] = r.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("manifold"), py::arg("field"), py::arg("resolution") = std::nullopt,
        py::arg("tolerance") = kIdentityTolerance, py::arg("as_printed") = false);

    m.def(
        "ratios",
        [](const ManifoldSpec& man, const ScalarField& u,
           std::optional<std::vector<int>> resolution) {
            GridGeometry gg(man, build_grid(man, pick_resolution(man, resolution)));
            Functionals f = eval_functionals(gg, u);
            return ratios_dict(ratios_from(f, gg.volume(), man.display));
        },
        py::arg("manifold"), py::arg("field"), py::arg("resolution") = std::nullopt,
        "Inequality ratios main = A/B, bernis = E/B, cross = D/B.");

    m.def(
        "byparts_residual",
        [](const ManifoldSpec& man, const ScalarField& f, const ScalarField& u,
           bool printed_sign, std::optional<std::vector<int>> resolution) {
            Grid g = build_grid(man, pick_resolution(man, resolution));
            return byparts_residual(man, g, f, u,
                                    printed_sign ? BypartsSign::as_printed
                                                 : BypartsSign::divergence);
        },
        py::arg("manifold"), py::arg("f"), py::arg("u"), py::arg("printed_sign") = false,
        py::arg("resolution") = std::nullopt);

    m.def(
        "estimate_constant",
        [](const ManifoldSpec& man, const std::string& family, int n_params, long budget,
           std::uint64_t seed, const std::string& objective, int restarts,
           std::optional<std::vector<int>> resolution) {
            EstimateOptions opt;
            opt.restarts = restarts;
            if (resolution) opt.resolution = resolution;
            EstimateReport r = estimate_constant(man, family, n_params, budget, seed, objective,
                                                 opt);
            py::dict d;
            d["manifold"] = r.manifold;
            d["family"] = r.family;
            d["objective"] = r.objective;
            d["best_ratio"] = r.best_ratio;
            d["best_params"] = r.best_params;
            d["restarts_run"] = r.restarts_run;
            d["evals_used"] = r.evals_used;
            d["certified_ratio"] = r.certified_ratio;
            d["unresolved"] = r.unresolved;
            d["empty_max"] = r.empty_max;
            return d;
        },
        py::arg("manifold"), py::arg("family"), py::arg("n_params"), py::arg("budget") = 2000,
        py::arg("seed") = 0, py::arg("objective") = "main", py::arg("restarts") = 50,
        py::arg("resolution") = std::nullopt,
        "Maximize an inequality ratio over a family; returns the certified incumbent.");

    m.def("default_resolution",
          [](const ManifoldSpec& man) { return default_resolution(man); });
    m.attr("__version__") = "0.1.0";
}
