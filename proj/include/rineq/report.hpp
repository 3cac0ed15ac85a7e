#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rineq/verifier.hpp"

namespace rineq {

/// Reports use insertion-ordered JSON and fixed float formatting so that a
/// rerun of the same config is byte-identical.
using Json = nlohmann::ordered_json;

std::string format_double(double v);
std::string resolution_label(std::span<const int> res);

Json to_json(const Functionals& f);
Json to_json(const IdentityReport& r);
Json to_json(const RatioReport& r);
Json to_json(const EstimateReport& r);

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const Json& doc);

/// CSV rows for identity reports: one line per (sample, identity).
struct IdentityCsvRow {
    std::string manifold;
    std::string family;
    int sample = 0;
    IdentityReport report;
};
std::string identities_csv(const std::vector<IdentityCsvRow>& rows);

struct RatioCsvRow {
    std::string manifold;
    std::string family;
    int sample = 0;
    RatioReport report;
    bool degenerate = false;
};
std::string ratios_csv(const std::vector<RatioCsvRow>& rows);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

std::string estimate_trace_csv(const std::vector<EstimateReport>& reports);

} // namespace rineq
