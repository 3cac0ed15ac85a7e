#include "rineq/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "rineq/families.hpp"
#include "rineq/optimize.hpp"
#include "rineq/util.hpp"

namespace rineq {

GridGeometry::GridGeometry(const ManifoldSpec& m, Grid grid, int jobs)
    : m_(m), grid_(std::move(grid)) {
    std::size_t n = grid_.size();
    wdet_.resize(n);
    const int dim = m_.dim();
    if (m_.constant_metric) {
        shared_geometry_ = true;
        std::vector<double> x(static_cast<std::size_t>(dim));
        grid_.point(0, x);
        geo_.push_back(compute_geometry(m_, x));
        const double sdet = geo_[0].sqrt_det_g;
        for (std::size_t i = 0; i < n; ++i) wdet_[i] = grid_.weight(i) * sdet;
    } else {
        geo_.resize(n);
        parallel_for(n, jobs, [&](std::size_t i) {
            double x[MultiIndexTable::kMaxDim];
            grid_.point(i, {x, static_cast<std::size_t>(dim)});
            geo_[i] = compute_geometry(m_, {x, static_cast<std::size_t>(dim)});
            wdet_[i] = grid_.weight(i) * geo_[i].sqrt_det_g;
        });
    }
    volume_ = pairwise_sum(wdet_);
}

namespace {

struct NodeIntegrands {
    double a, b, d, e, f, g, h;
};

NodeIntegrands node_integrands(const GeometryData& geo, const Jet& u_jet) {
    const int n = geo.dim;
    const double u = u_jet.value();
    if (!(u > 0.0)) throw PositivityViolation("functional integrand requires u > 0");

    PointCalculus pc = point_calculus(geo, u_jet);

    // Hessian-norm of a derived field from its jet: assemble H, contract
    // g^{ik} g^{jl} H_ij H_kl.
    double hbuf[MultiIndexTable::kMaxDim * MultiIndexTable::kMaxDim];
    auto hessian_norm2 = [&](const Jet& w) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double hij = w.d2(i, j);
                for (int k = 0; k < n; ++k) hij -= geo.gamma0(k, i, j) * w.d1(k);
                hbuf[i * n + j] = hij;
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        norm += geo.ginv0(i, k) * geo.ginv0(j, l) * hbuf[i * n + j] * hbuf[k * n + l];
        return norm;
    };

    NodeIntegrands out{};
    out.a = hessian_norm2(sqrt(u_jet));
    out.b = u * hessian_norm2(log(u_jet));

    double hess_grad_grad = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            hess_grad_grad += pc.h(i, j, n) * pc.grad[static_cast<std::size_t>(i)] *
                              pc.grad[static_cast<std::size_t>(j)];
    out.d = hess_grad_grad / (u * u);
    out.e = pc.grad_norm2 * pc.grad_norm2 / (u * u * u);
    out.f = pc.ric_grad_grad / u;

    Jet lap1 = laplacian_jet(geo, u_jet);
    double grad_pair = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grad_pair += geo.ginv0(i, j) * pc.du[static_cast<std::size_t>(i)] * lap1.d1(j);
    out.g = grad_pair / u;
    out.h = pc.grad_norm2 / (u * u) * pc.lap;
    return out;
}

} // namespace

namespace {

template <typename JetAtNode>
Functionals eval_functionals_nodes(const GridGeometry& gg, const JetAtNode& jet_at_node,
                                   int jobs) {
    std::size_t n = gg.size();
    std::vector<double> ta(n), tb(n), td(n), te(n), tf(n), tg(n), th(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        NodeIntegrands v = node_integrands(gg.geometry(i), jet_at_node(i));
        double w = gg.weighted_density(i);
        ta[i] = w * v.a;
        tb[i] = w * v.b;
        td[i] = w * v.d;
        te[i] = w * v.e;
        tf[i] = w * v.f;
        tg[i] = w * v.g;
        th[i] = w * v.h;
    });
    Functionals f;
    f.A = pairwise_sum(ta);
    f.B = pairwise_sum(tb);
    f.D = pairwise_sum(td);
    f.E = pairwise_sum(te);
    f.F = pairwise_sum(tf);
    f.G = pairwise_sum(tg);
    f.H = pairwise_sum(th);
    return f;
}

} // namespace

Functionals eval_functionals(const GridGeometry& gg, const ScalarField& u, int jobs) {
    const int dim = gg.manifold().dim();
    return eval_functionals_nodes(
        gg,
        [&](std::size_t i) {
            double x[MultiIndexTable::kMaxDim];
            gg.node_point(i, {x, static_cast<std::size_t>(dim)});
            return u.jet_at({x, static_cast<std::size_t>(dim)});
        },
        jobs);
}

Functionals eval_functionals(const ManifoldSpec& m, const Grid& grid, const ScalarField& u,
                             int jobs) {
    return eval_functionals(GridGeometry(m, grid, jobs), u, jobs);
}

CompiledFamily::CompiledFamily(std::string family_name, int n_params, const GridGeometry& gg,
                               int jobs)
    : name_(std::move(family_name)), n_params_(n_params), dim_(gg.manifold().dim()) {
    const ManifoldSpec& m = gg.manifold();
    bool is_peak = name_ == "peak";
    int trig_modes = name_ == "shifted-trig" ? std::max(0, n_params - 1) : n_params;
    if (name_ != "exp-trig" && name_ != "shifted-trig" && !is_peak)
        throw InvalidFamily("unknown family '" + name_ + "'");
    if (!is_peak && trig_modes > family_mode_count(m))
        throw InvalidFamily("too many parameters for this manifold's mode catalog");
    n_modes_ = is_peak ? 1 : trig_modes;
    mode_sups_.resize(static_cast<std::size_t>(n_modes_));
    for (int k = 0; k < n_modes_ && !is_peak; ++k)
        mode_sups_[static_cast<std::size_t>(k)] = family_mode_sup(k, m);

    std::vector<ScalarField> mode_fields;
    if (is_peak) {
        mode_fields.push_back(peak_bump_log_field(m));
    } else {
        for (int k = 0; k < n_modes_; ++k) mode_fields.push_back(family_mode(k, m));
    }

    std::size_t n = gg.size();
    std::size_t stride = mode_fields.size();
    modes_.resize(n * stride);
    if (stride == 0) return;
    parallel_for(n, jobs, [&](std::size_t i) {
        double x[MultiIndexTable::kMaxDim];
        gg.node_point(i, {x, static_cast<std::size_t>(dim_)});
        for (std::size_t k = 0; k < stride; ++k)
            modes_[i * stride + k] = mode_fields[k].eval({x, static_cast<std::size_t>(dim_)});
    });
}

Jet CompiledFamily::jet_at_node(std::size_t node, std::span<const double> params) const {
    if (name_ == "peak") {
        if (params.empty()) throw InvalidFamily("peak needs at least the strength parameter");
        double strength = params[0];
        double width = params.size() >= 2 ? 0.15 + std::abs(params[1]) : 0.65;
        Jet bump = exp(modes_[node] * (1.0 / (width * width)));
        return exp(bump * strength);
    }
    bool shifted = name_ == "shifted-trig";
    if (shifted) {
        if (params.empty()) throw InvalidFamily("shifted-trig needs at least the shift parameter");
        double bound = params[0];
        for (std::size_t k = 1; k < params.size(); ++k)
            bound -= std::abs(params[k]) * mode_sups_[k - 1];
        if (bound < kShiftedTrigMargin)
            throw NonPositiveFamily("shifted-trig margin violated");
    }
    Jet acc = Jet::constant(shifted ? params[0] : 0.0, dim_, 3);
    std::size_t base = node * static_cast<std::size_t>(n_modes_);
    for (int k = 0; k < n_modes_; ++k) {
        double a = shifted ? params[static_cast<std::size_t>(k) + 1]
                           : params[static_cast<std::size_t>(k)];
        if (a == 0.0) continue;
        const Jet& mode = modes_[base + static_cast<std::size_t>(k)];
        for (int s = 0; s < acc.size(); ++s) acc[s] += a * mode[s];
    }
    Jet out = shifted ? acc : exp(acc);
    if (!(out.value() > 0.0)) throw PositivityViolation("family field non-positive at a node");
    return out;
}

Functionals CompiledFamily::eval(const GridGeometry& gg, std::span<const double> params,
                                 int jobs) const {
    return eval_functionals_nodes(
        gg, [&](std::size_t i) { return jet_at_node(i, params); }, jobs);
}

namespace {

IdentityReport make_report(const std::string& name, double lhs, double rhs,
                           std::span<const int> resolution, double tolerance) {
    IdentityReport r;
    r.identity_name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.rel_residual = r.abs_residual / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.resolution.assign(resolution.begin(), resolution.end());
    r.pass = r.rel_residual < tolerance;
    return r;
}

} // namespace

std::vector<IdentityReport> identity_chain_reports(const Functionals& f,
                                                   std::span<const int> resolution,
                                                   double tolerance,
                                                   ChainCoefficients coefficients) {
    bool printed = coefficients == ChainCoefficients::as_printed;
    std::vector<IdentityReport> out;
    out.push_back(make_report("drugie", f.H, -2.0 * f.D + 2.0 * f.E, resolution, tolerance));
    out.push_back(make_report(
        "trzecie", f.A,
        printed ? -0.25 * f.G + 0.25 * f.D - 0.125 * f.E - 0.25 * f.F
                : -0.25 * f.G + f.E / 16.0 - 0.25 * f.F,
        resolution, tolerance));
    out.push_back(make_report("czwarte", f.B, -f.G - f.D + f.E - f.F, resolution, tolerance));
    out.push_back(make_report("piate", f.A,
                              printed ? 0.25 * f.B + 0.5 * f.D - 0.375 * f.E
                                      : 0.25 * f.B + 0.25 * f.D - 0.1875 * f.E,
                              resolution, tolerance));
    return out;
}

std::vector<IdentityReport> check_identity_chain(const ManifoldSpec& m, const Grid& grid,
                                                 const ScalarField& u, double tolerance,
                                                 int jobs) {
    Functionals f = eval_functionals(m, grid, u, jobs);
    return identity_chain_reports(f, grid.resolution, tolerance);
}

RatioReport ratios_from(const Functionals& f, double volume, const std::string& manifold,
                        std::vector<double> family_params) {
    RatioReport r;
    r.manifold = manifold;
    r.family_params = std::move(family_params);
    double floor = kBFloorFactor * volume;
    if (!(f.B > floor)) {
        r.b_floor_hit = true;
        throw DegenerateRatio("B below floor: u is numerically constant");
    }
    r.ratio_main = f.A / f.B;
    r.ratio_bernis = f.E / f.B;
    r.ratio_cross = f.D / f.B;
    return r;
}

RatioReport check_inequalities(const ManifoldSpec& m, const Grid& grid, const ScalarField& u,
                               int jobs) {
    GridGeometry gg(m, grid, jobs);
    Functionals f = eval_functionals(gg, u, jobs);
    return ratios_from(f, gg.volume(), m.display);
}

EstimateReport estimate_constant(const ManifoldSpec& m, const std::string& family_name,
                                 int n_params, long budget, std::uint64_t seed,
                                 const std::string& objective, const EstimateOptions& options) {
    if (budget < 100) throw ConfigError("estimate budget must be >= 100");
    if (objective != "main" && objective != "bernis")
        throw ConfigError("objective must be 'main' or 'bernis'");

    std::vector<int> res = options.resolution ? *options.resolution : default_resolution(m);
    GridGeometry gg(m, build_grid(m, res), options.jobs);
    GridGeometry gg_fine(m, build_grid(m, doubled(res)), options.jobs);

    EstimateReport report;
    report.manifold = m.display;
    report.family = family_name;
    report.n_params = n_params;
    report.objective = objective;
    report.resolution = res;

    CompiledFamily compiled(family_name, n_params, gg, options.jobs);
    CompiledFamily compiled_fine(family_name, n_params, gg_fine, options.jobs);

    auto ratio_on = [&](const GridGeometry& geom, const CompiledFamily& fam,
                        std::span<const double> params) -> double {
        // Degenerate or invalid points score 0: they are never maxima
        // (the near-constant region approaches 1/4 for ratio_main before
        // the floor cuts in, so the floor only masks exact constants).
        try {
            Functionals f = fam.eval(geom, params, options.jobs);
            RatioReport r = ratios_from(f, geom.volume(), m.display);
            return objective == "main" ? r.ratio_main : r.ratio_bernis;
        } catch (const DegenerateRatio&) {
            return 0.0;
        } catch (const NonPositiveFamily&) {
            return 0.0;
        } catch (const PositivityViolation&) {
            return 0.0;
        }
    };

    // Restart starts are drawn upfront so budget exhaustion cannot shift
    // the sequence.
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<std::size_t>(options.restarts));
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> x(static_cast<std::size_t>(n_params));
        for (auto& v : x) v = uniform(rng, options.box_lo, options.box_hi);
        starts.push_back(std::move(x));
    }

    std::vector<double> box_lo(static_cast<std::size_t>(n_params), options.box_lo);
    std::vector<double> box_hi(static_cast<std::size_t>(n_params), options.box_hi);

    bool have_best = false;
    long evals_left = budget;
    auto counted_objective = [&](std::span<const double> p) { return ratio_on(gg, compiled, p); };
    for (int r = 0; r < options.restarts && evals_left > 0; ++r) {
        SimplexOutcome oc = nelder_mead_maximize(counted_objective, starts[static_cast<std::size_t>(r)],
                                                 box_lo, box_hi,
                                                 static_cast<int>(evals_left));
        evals_left -= oc.evals;
        report.evals_used += oc.evals;
        report.restarts_run += 1;
        if (!have_best || oc.best_value > report.best_ratio) {
            report.best_ratio = oc.best_value;
            report.best_params = oc.best_x;
            have_best = true;
        }
        RestartTrace t;
        t.restart = r;
        t.best_ratio = report.best_ratio;
        t.evals = oc.evals;
        report.trace.push_back(t);
    }

    if (!have_best || report.best_ratio <= 0.0) {
        report.empty_max = report.best_ratio <= 0.0;
    }
    if (have_best) {
        report.certified_ratio = ratio_on(gg_fine, compiled_fine, report.best_params);
        double scale = std::max(std::abs(report.best_ratio), 1e-300);
        report.unresolved =
            std::abs(report.certified_ratio - report.best_ratio) > options.certify_rel_tol * scale;
    }
    return report;
}

} // namespace rineq
