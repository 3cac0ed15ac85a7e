#include "rineq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "rineq/families.hpp"
#include "rineq/report.hpp"
#include "rineq/util.hpp"
#include "rineq/verifier.hpp"

namespace rineq {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + " is not a number: '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + " is not an integer: '" + s + "'");
    }
}

std::vector<int> resolution_for(const ManifoldSpec& m, const RunConfig& config) {
    if (!config.resolution) return default_resolution(m);
    std::vector<int> res = *config.resolution;
    if (static_cast<int>(res.size()) == 1 && m.dim() > 1)
        res.assign(static_cast<std::size_t>(m.dim()), res[0]);
    if (static_cast<int>(res.size()) != m.dim())
        throw ConfigError("resolution has " + std::to_string(res.size()) + " entries, manifold '" +
                          m.display + "' has dim " + std::to_string(m.dim()));
    return res;
}

Json config_echo(const RunConfig& config, const ManifoldSpec& m, std::span<const int> resolution,
                 const Tolerances& tol) {
    Json j;
    j["manifold"] = m.display;
    j["family"] = config.family;
    j["seed"] = config.seed;
    j["resolution"] = std::vector<int>(resolution.begin(), resolution.end());
    Json t;
    t["lemma"] = tol.lemma;
    t["bochner"] = tol.bochner;
    t["log"] = tol.log;
    t["sqrt"] = tol.sqrt;
    t["trace"] = tol.trace;
    t["identity-chain"] = tol.identity_chain;
    j["tolerances"] = t;
    return j;
}

} // namespace

Tolerances Tolerances::with_overrides(const std::map<std::string, double>& overrides) {
    Tolerances t;
    for (const auto& [name, value] : overrides) {
        if (name == "lemma") t.lemma = value;
        else if (name == "bochner") t.bochner = value;
        else if (name == "log") t.log = value;
        else if (name == "sqrt") t.sqrt = value;
        else if (name == "trace") t.trace = value;
        else if (name == "identity-chain") t.identity_chain = value;
        else throw ConfigError("unknown tolerance '" + name + "'");
    }
    return t;
}

ManifoldSpec parse_manifold_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    if (kind == "sphere") {
        double radius = parts.size() > 1 ? parse_real(parts[1], "sphere radius") : 1.0;
        if (!(radius > 0.0)) throw ConfigError("radius must be positive");
        return round_sphere(radius);
    }
    if (kind == "flat-torus") {
        int dim = parts.size() > 1 ? parse_int(parts[1], "flat torus dim") : 2;
        if (dim < 1) throw ConfigError("flat torus dimension must be >= 1");
        std::vector<double> lengths;
        if (parts.size() > 2) {
            for (const auto& tok : split(parts[2], ','))
                lengths.push_back(parse_real(tok, "flat torus length"));
        } else {
            lengths.assign(static_cast<std::size_t>(dim), 2.0 * 3.14159265358979323846);
        }
        return flat_torus(dim, lengths);
    }
    if (kind == "torus-rev") {
        if (parts.size() < 2) throw ConfigError("torus-rev needs R,r as in torus-rev:2.0,0.5");
        auto nums = split(parts[1], ',');
        if (nums.size() != 2) throw ConfigError("torus-rev needs exactly two radii");
        double R = parse_real(nums[0], "torus-rev R");
        double r = parse_real(nums[1], "torus-rev r");
        return torus_of_revolution(R, r);
    }
    if (kind == "conformal-torus") {
        double amp = parts.size() > 1 ? parse_real(parts[1], "conformal amplitude") : 0.1;
        return conformal_torus_sine(amp);
    }
    throw ConfigError("unknown manifold '" + kind + "' (see list-manifolds)");
}

std::vector<int> parse_resolution(const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split(text, ','))
        out.push_back(parse_int(tok, "resolution"));
    for (int r : out)
        if (r < 4) throw ConfigError("resolution must be >= 4 per axis");
    return out;
}

std::string list_manifolds_text() {
    return "catalog manifolds (spec strings for --manifold):\n"
           "  flat-torus:<dim>[:<L1,...,Ldim>]   flat torus, lengths default to 2*pi\n"
           "  sphere:<radius>                    round sphere in (theta, phi)\n"
           "  torus-rev:<R>,<r>                  torus of revolution, R > r > 0\n"
           "  conformal-torus:<a>                metric e^{2 a sin x1} * delta on [0,2pi)^2\n"
           "function families (--family name:count):\n"
           "  exp-trig:<k>      u = exp(sum a_i mode_i)\n"
           "  shifted-trig:<k>  u = a_0 + sum a_i mode_i (kept >= 0.5)\n"
           "  peak:<k>          u = exp(a_0 * bump(width 0.15+|a_1|))\n";
}

namespace {

struct VerifyOutcome {
    bool pass = true;
    std::string first_failure;

    void fail(const std::string& what) {
        if (pass) first_failure = what;
        pass = false;
    }
};

} // namespace

int run_verify(const RunConfig& config) {
    if (config.manifolds.size() != 1)
        throw ConfigError("verify expects exactly one --manifold");
    ManifoldSpec m = parse_manifold_spec(config.manifolds[0]);
    FamilySpec family = parse_family_spec(config.family);
    Tolerances tol = Tolerances::with_overrides(config.tolerance_overrides);
    std::vector<int> res = resolution_for(m, config);
    if (config.samples < 1) throw ConfigError("--samples must be >= 1");
    if (config.points < 1) throw ConfigError("--points must be >= 1");

    GridGeometry gg(m, build_grid(m, res), config.jobs);

    std::mt19937_64 rng(config.seed);
    std::vector<std::vector<double>> sample_params;
    if (config.params) {
        sample_params.push_back(*config.params);
    } else {
        for (int s = 0; s < config.samples; ++s)
            sample_params.push_back(random_family_params(family.name, family.n_params, m, rng));
    }
    std::vector<ScalarField> fields;
    for (const auto& p : sample_params) fields.push_back(function_family(family.name, p, m));

    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(config.points));
    for (int i = 0; i < config.points; ++i) points.push_back(random_interior_point(m, rng));

    // Pointwise sweep: every (point, sample) pair; per-point maxima are
    // reduced sequentially so --jobs cannot change the result.
    struct PointMax {
        double lemma = 0.0, bochner = 0.0, log = 0.0, sqrt = 0.0;
        long trace_violations = 0;
    };
    std::vector<PointMax> per_point(points.size());
    parallel_for(points.size(), config.jobs, [&](std::size_t i) {
        GeometryData geo = compute_geometry(m, points[i]);
        PointMax& pm = per_point[i];
        for (const auto& field : fields) {
            PointwiseChecks c = pointwise_checks(geo, field.jet_at(points[i]));
            pm.lemma = std::max(pm.lemma, std::abs(c.lemma_residual) / c.lemma_scale);
            pm.bochner = std::max(pm.bochner, std::abs(c.bochner_residual) / c.bochner_scale);
            pm.log = std::max(pm.log, std::abs(c.log_residual) / c.log_scale);
            pm.sqrt = std::max(pm.sqrt, std::abs(c.sqrt_residual) / c.sqrt_scale);
            if (c.trace_lhs > c.trace_rhs + tol.trace * std::max(1.0, c.trace_rhs))
                pm.trace_violations += 1;
        }
    });
    PointMax sweep;
    for (const auto& pm : per_point) {
        sweep.lemma = std::max(sweep.lemma, pm.lemma);
        sweep.bochner = std::max(sweep.bochner, pm.bochner);
        sweep.log = std::max(sweep.log, pm.log);
        sweep.sqrt = std::max(sweep.sqrt, pm.sqrt);
        sweep.trace_violations += pm.trace_violations;
    }

    VerifyOutcome outcome;
    if (!(sweep.lemma < tol.lemma)) outcome.fail("pointwise lemma_auxi residual");
    if (!(sweep.bochner < tol.bochner)) outcome.fail("pointwise bochner residual");
    if (!(sweep.log < tol.log)) outcome.fail("pointwise log identity residual");
    if (!(sweep.sqrt < tol.sqrt)) outcome.fail("pointwise sqrt identity residual");
    if (sweep.trace_violations != 0) outcome.fail("pointwise trace bound (raz)");

    // Integral chain and ratios per sample.
    std::vector<IdentityCsvRow> id_rows;
    std::vector<RatioCsvRow> ratio_rows;
    Json samples_json = Json::array();
    for (std::size_t s = 0; s < fields.size(); ++s) {
        Functionals f = eval_functionals(gg, fields[s], config.jobs);
        auto reports = identity_chain_reports(f, res, tol.identity_chain);
        Json sj;
        sj["params"] = sample_params[s];
        sj["functionals"] = to_json(f);
        Json ids = Json::array();
        for (const auto& r : reports) {
            if (!r.pass) outcome.fail("identity '" + r.identity_name + "'");
            ids.push_back(to_json(r));
            id_rows.push_back({m.display, config.family, static_cast<int>(s), r});
        }
        sj["identities"] = ids;
        RatioCsvRow rr;
        rr.manifold = m.display;
        rr.family = config.family;
        rr.sample = static_cast<int>(s);
        try {
            rr.report = ratios_from(f, gg.volume(), m.display, sample_params[s]);
            if (!std::isfinite(rr.report.ratio_main) || !std::isfinite(rr.report.ratio_bernis) ||
                !std::isfinite(rr.report.ratio_cross))
                outcome.fail("non-finite inequality ratio");
        } catch (const DegenerateRatio&) {
            rr.degenerate = true;
            rr.report.b_floor_hit = true;
            rr.report.family_params = sample_params[s];
        }
        sj["ratios"] = to_json(rr.report);
        sj["ratios"]["degenerate"] = rr.degenerate;
        ratio_rows.push_back(rr);
        samples_json.push_back(sj);
    }

    Json doc;
    doc["command"] = "verify";
    Json cfg = config_echo(config, m, res, tol);
    cfg["samples"] = config.samples;
    cfg["points"] = config.points;
    doc["config"] = cfg;
    Json mj;
    mj["name"] = m.name;
    mj["display"] = m.display;
    mj["dim"] = m.dim();
    if (m.known_volume) mj["known_volume"] = *m.known_volume;
    mj["volume_quadrature"] = gg.volume();
    doc["manifold"] = mj;
    Json pw;
    pw["points"] = config.points;
    Json mx;
    mx["lemma"] = sweep.lemma;
    mx["bochner"] = sweep.bochner;
    mx["log"] = sweep.log;
    mx["sqrt"] = sweep.sqrt;
    pw["max_rel_residual"] = mx;
    pw["trace_bound_violations"] = sweep.trace_violations;
    doc["pointwise"] = pw;
    doc["samples"] = samples_json;
    doc["pass"] = outcome.pass;

    std::filesystem::path out(config.out_dir);
    write_json_file(out / "report.json", doc);
    write_text_file(out / "identities.csv", identities_csv(id_rows));
    write_text_file(out / "ratios.csv", ratios_csv(ratio_rows));

    std::cout << "verify " << m.display << " family " << config.family << " resolution "
              << resolution_label(res) << "\n"
              << "  pointwise max rel residuals: lemma " << format_double(sweep.lemma)
              << ", bochner " << format_double(sweep.bochner) << ", log "
              << format_double(sweep.log) << ", sqrt " << format_double(sweep.sqrt) << "\n"
              << "  trace bound violations: " << sweep.trace_violations << "\n"
              << "  identity chain: " << id_rows.size() << " checks, "
              << (outcome.pass ? "all passed" : "FAILURES present") << "\n"
              << "  report: " << (out / "report.json").string() << "\n";
    if (!outcome.pass) {
        std::cerr << "verify: check failed: " << outcome.first_failure << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_estimate(const RunConfig& config) {
    if (config.manifolds.empty()) throw ConfigError("estimate-c needs at least one --manifold");
    FamilySpec family = parse_family_spec(config.family);
    Tolerances tol = Tolerances::with_overrides(config.tolerance_overrides);

    std::vector<EstimateReport> reports;
    Json estimates = Json::array();
    bool any_unresolved = false;
    for (const auto& mspec : config.manifolds) {
        ManifoldSpec m = parse_manifold_spec(mspec);
        std::vector<int> res = resolution_for(m, config);
        for (const std::string objective : {"main", "bernis"}) {
            EstimateOptions opt;
            opt.restarts = config.restarts;
            opt.jobs = config.jobs;
            opt.resolution = res;
            EstimateReport rep = estimate_constant(m, family.name, family.n_params, config.budget,
                                                   config.seed, objective, opt);
            any_unresolved |= rep.unresolved;
            estimates.push_back(to_json(rep));
            reports.push_back(std::move(rep));
        }
    }

    Json doc;
    doc["command"] = "estimate-c";
    Json cfg;
    cfg["manifolds"] = config.manifolds;
    cfg["family"] = config.family;
    cfg["budget"] = config.budget;
    cfg["restarts"] = config.restarts;
    cfg["seed"] = config.seed;
    if (config.resolution) cfg["resolution"] = *config.resolution;
    doc["config"] = cfg;
    doc["estimates"] = estimates;
    doc["pass"] = !any_unresolved;

    std::filesystem::path out(config.out_dir);
    write_json_file(out / "report.json", doc);
    write_text_file(out / "trace.csv", estimate_trace_csv(reports));

    for (const auto& rep : reports) {
        std::cout << "estimate-c " << rep.manifold << " " << rep.family << ":" << rep.n_params
                  << " objective " << rep.objective << ": best ratio "
                  << format_double(rep.best_ratio) << " (certified "
                  << format_double(rep.certified_ratio) << ", evals " << rep.evals_used << ", "
                  << (rep.unresolved ? "UNRESOLVED" : "resolved") << ")\n";
    }
    std::cout << "  report: " << (out / "report.json").string() << "\n";
    (void)tol;
    if (any_unresolved) {
        std::cerr << "estimate-c: incumbent failed 2x-resolution certification\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_convergence(const RunConfig& config) {
    if (config.manifolds.size() != 1)
        throw ConfigError("convergence expects exactly one --manifold");
    if (config.refine < 2) throw ConfigError("--refine must be >= 2");
    ManifoldSpec m = parse_manifold_spec(config.manifolds[0]);
    FamilySpec family = parse_family_spec(config.family);
    Tolerances tol = Tolerances::with_overrides(config.tolerance_overrides);
    std::vector<int> base = resolution_for(m, config);

    std::vector<std::vector<int>> resolutions;
    for (int k = 0; k <= config.refine; ++k) {
        std::vector<int> r = base;
        for (int& v : r) v <<= k;
        resolutions.push_back(r);
    }

    std::mt19937_64 rng(config.seed);
    std::vector<double> params =
        config.params ? *config.params
                      : random_family_params(family.name, family.n_params, m, rng);
    ScalarField u = function_family(family.name, params, m);
    ScalarField f = family_mode(0, m);

    auto volume_quantity = [&](const Grid& grid) {
        return integrate(m, grid, [](std::span<const double>) { return 1.0; }, config.jobs);
    };
    auto byparts_quantity = [&](const Grid& grid) {
        return byparts_residual(m, grid, f, u, BypartsSign::divergence, config.jobs);
    };
    auto piate_quantity = [&](const Grid& grid) {
        auto reports = check_identity_chain(m, grid, u, tol.identity_chain, config.jobs);
        return reports[3].rel_residual; // piate
    };

    auto volume_rows = convergence_study(m, volume_quantity, resolutions);
    auto byparts_rows = convergence_study(m, byparts_quantity, resolutions);
    auto piate_rows = convergence_study(m, piate_quantity, resolutions);

    std::filesystem::path out(config.out_dir);
    write_text_file(out / "convergence_volume.csv", convergence_csv(volume_rows));
    write_text_file(out / "convergence_byparts.csv", convergence_csv(byparts_rows));
    write_text_file(out / "convergence_piate.csv", convergence_csv(piate_rows));

    Json doc;
    doc["command"] = "convergence";
    Json cfg = config_echo(config, m, base, tol);
    cfg["refine"] = config.refine;
    cfg["params"] = params;
    doc["config"] = cfg;
    auto rows_json = [](const std::vector<ConvergenceRow>& rows) {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["resolution"] = r.resolution;
            j["value"] = r.value;
            j["delta"] = r.delta;
            j["est_order"] = r.est_order;
            arr.push_back(j);
        }
        return arr;
    };
    doc["volume"] = rows_json(volume_rows);
    doc["byparts"] = rows_json(byparts_rows);
    doc["piate"] = rows_json(piate_rows);
    doc["pass"] = true;

    write_json_file(out / "report.json", doc);

    auto print_rows = [](const std::string& name, const std::vector<ConvergenceRow>& rows) {
        std::cout << "  " << name << ":\n";
        for (const auto& r : rows)
            std::cout << "    " << resolution_label(r.resolution) << "  value "
                      << format_double(r.value) << "  delta " << format_double(r.delta) << "\n";
    };
    std::cout << "convergence " << m.display << " family " << config.family << " params ";
    for (std::size_t i = 0; i < params.size(); ++i)
        std::cout << (i ? "," : "") << format_double(params[i]);
    std::cout << "\n";
    print_rows("volume", volume_rows);
    print_rows("byparts residual", byparts_rows);
    print_rows("piate rel residual", piate_rows);
    return kExitOk;
}

} // namespace rineq
