#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rineq/cli.hpp"
#include "rineq/util.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("RIEMANN_INEQ_OUT")) return env;
    return "out";
}

void add_common_flags(CLI::App* cmd, rineq::RunConfig& cfg, std::string& resolution_text,
                      std::string& params_text, std::vector<std::string>& tolerance_kv) {
    cmd->add_option("--manifold", cfg.manifolds, "manifold spec, e.g. sphere:1.0 (repeatable)");
    cmd->add_option("--family", cfg.family, "family spec, e.g. exp-trig:4");
    cmd->add_option("--resolution", resolution_text, "per-axis node counts, e.g. 64 or 48,96");
    cmd->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    cmd->add_option("--jobs", cfg.jobs, "worker threads; never changes results");
    cmd->add_option("--out", cfg.out_dir, "output directory (env RIEMANN_INEQ_OUT)");
    cmd->add_option("--tolerance", tolerance_kv, "override, e.g. --tolerance bochner=1e-7");
    cmd->add_option("--params", params_text, "pin explicit family parameters, comma-separated");
    cmd->set_config("--config", "", "key=value file mapping 1:1 to flags");
}

void finish_config(rineq::RunConfig& cfg, const std::string& resolution_text,
                   const std::string& params_text, const std::vector<std::string>& tolerance_kv) {
    if (!resolution_text.empty()) cfg.resolution = rineq::parse_resolution(resolution_text);
    if (!params_text.empty()) {
        std::vector<double> params;
        std::size_t start = 0;
        while (start <= params_text.size()) {
            std::size_t comma = params_text.find(',', start);
            std::string tok = params_text.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            try {
                params.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw rineq::ConfigError("--params entry is not a number: '" + tok + "'");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        cfg.params = params;
    }
    for (const auto& kv : tolerance_kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw rineq::ConfigError("--tolerance expects name=value, got '" + kv + "'");
        std::string name = kv.substr(0, eq);
        try {
            cfg.tolerance_overrides[name] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw rineq::ConfigError("--tolerance value is not a number: '" + kv + "'");
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"covariant-calculus verification and Hessian-inequality constant estimation"};
    app.require_subcommand(1);

    rineq::RunConfig cfg;
    cfg.jobs = rineq::default_jobs();
    cfg.out_dir = default_out_dir();
    std::string resolution_text, params_text;
    std::vector<std::string> tolerance_kv;

    CLI::App* verify = app.add_subcommand(
        "verify", "pointwise residual sweep + integral identity chain + inequality ratios");
    add_common_flags(verify, cfg, resolution_text, params_text, tolerance_kv);
    verify->add_option("--samples", cfg.samples, "random family samples (default 20)");
    verify->add_option("--points", cfg.points, "random interior points (default 10000)");

    CLI::App* estimate = app.add_subcommand(
        "estimate-c", "maximize the inequality ratios over a family to bound the constant");
    add_common_flags(estimate, cfg, resolution_text, params_text, tolerance_kv);
    estimate->add_option("--budget", cfg.budget, "objective evaluations per search (default 2000)");
    estimate->add_option("--restarts", cfg.restarts, "simplex restarts (default 50)");

    CLI::App* convergence = app.add_subcommand(
        "convergence", "volume / byparts / identity residual tables under grid refinement");
    add_common_flags(convergence, cfg, resolution_text, params_text, tolerance_kv);
    convergence->add_option("--refine", cfg.refine, "number of resolution doublings (default 2)");

    CLI::App* list = app.add_subcommand("list-manifolds", "print the manifold/family catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? rineq::kExitOk : rineq::kExitConfigError;
    }

    try {
        if (list->parsed()) {
            std::cout << rineq::list_manifolds_text();
            return rineq::kExitOk;
        }
        finish_config(cfg, resolution_text, params_text, tolerance_kv);
        if (verify->parsed()) {
            cfg.command = "verify";
            return rineq::run_verify(cfg);
        }
        if (estimate->parsed()) {
            cfg.command = "estimate-c";
            return rineq::run_estimate(cfg);
        }
        cfg.command = "convergence";
        return rineq::run_convergence(cfg);
    } catch (const rineq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return rineq::kExitConfigError;
    } catch (const rineq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rineq::kExitCheckFailed;
    }
}
