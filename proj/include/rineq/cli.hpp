#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rineq/manifold.hpp"

namespace rineq {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// One run's configuration; identical configs give identical outputs
/// (seed defaults to 0; jobs never affects results and is not echoed into
/// report files).
struct RunConfig {
    std::string command; // verify | estimate-c | convergence | list-manifolds
    std::vector<std::string> manifolds;
    std::string family = "exp-trig:4";
    int samples = 20;
    int points = 10000;
    std::optional<std::vector<int>> resolution;
    int refine = 2;
    std::uint64_t seed = 0;
    long budget = 2000;
    int restarts = 50;
    int jobs = 1;
    std::string out_dir = "out";
    std::map<std::string, double> tolerance_overrides;
    std::optional<std::vector<double>> params; // pin one explicit sample
};

/// Named tolerances with their defaults; overridable from the CLI.
struct Tolerances {
    double lemma = 1e-9;
    double bochner = 1e-8;
    double log = 1e-9;
    double sqrt = 1e-9;
    double trace = 1e-12;
    double identity_chain = 1e-7;

    static Tolerances with_overrides(const std::map<std::string, double>& overrides);
};

/// Parse "sphere:1.0", "flat-torus:2:6.2832,6.2832", "torus-rev:2.0,0.5",
/// "conformal-torus:0.1". Throws ConfigError with a user-facing message.
ManifoldSpec parse_manifold_spec(const std::string& spec);

std::vector<int> parse_resolution(const std::string& text);

std::string list_manifolds_text();

int run_verify(const RunConfig& config);
int run_estimate(const RunConfig& config);
int run_convergence(const RunConfig& config);

} // namespace rineq
