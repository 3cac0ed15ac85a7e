#include "rineq/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rineq {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string resolution_label(std::span<const int> res) {
    std::string out;
    for (std::size_t i = 0; i < res.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(res[i]);
    }
    return out;
}

Json to_json(const Functionals& f) {
    Json j;
    j["A"] = f.A;
    j["B"] = f.B;
    j["D"] = f.D;
    j["E"] = f.E;
    j["F"] = f.F;
    j["G"] = f.G;
    j["H"] = f.H;
    return j;
}

Json to_json(const IdentityReport& r) {
    Json j;
    j["name"] = r.identity_name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["resolution"] = r.resolution;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const RatioReport& r) {
    Json j;
    j["main"] = r.ratio_main;
    j["bernis"] = r.ratio_bernis;
    j["cross"] = r.ratio_cross;
    j["b_floor_hit"] = r.b_floor_hit;
    return j;
}

Json to_json(const EstimateReport& r) {
    Json j;
    j["manifold"] = r.manifold;
    j["family"] = r.family;
    j["n_params"] = r.n_params;
    j["objective"] = r.objective;
    j["best_ratio"] = r.best_ratio;
    j["best_params"] = r.best_params;
    j["restarts_run"] = r.restarts_run;
    j["evals_used"] = r.evals_used;
    j["resolution"] = r.resolution;
    j["certified_ratio"] = r.certified_ratio;
    j["unresolved"] = r.unresolved;
    j["empty_max"] = r.empty_max;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::string identities_csv(const std::vector<IdentityCsvRow>& rows) {
    std::ostringstream out;
    out << "manifold,family,sample,identity,lhs,rhs,abs_residual,rel_residual,resolution,pass\n";
    for (const auto& row : rows) {
        out << row.manifold << ',' << row.family << ',' << row.sample << ','
            << row.report.identity_name << ',' << format_double(row.report.lhs) << ','
            << format_double(row.report.rhs) << ',' << format_double(row.report.abs_residual)
            << ',' << format_double(row.report.rel_residual) << ','
            << resolution_label(row.report.resolution) << ',' << (row.report.pass ? 1 : 0)
            << '\n';
    }
    return out.str();
}

std::string ratios_csv(const std::vector<RatioCsvRow>& rows) {
    std::ostringstream out;
    out << "manifold,family,sample,main,bernis,cross,degenerate,params\n";
    for (const auto& row : rows) {
        out << row.manifold << ',' << row.family << ',' << row.sample << ','
            << format_double(row.report.ratio_main) << ',' << format_double(row.report.ratio_bernis)
            << ',' << format_double(row.report.ratio_cross) << ',' << (row.degenerate ? 1 : 0)
            << ',';
        for (std::size_t i = 0; i < row.report.family_params.size(); ++i) {
            if (i) out << ';';
            out << format_double(row.report.family_params[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "resolution,value,delta,est_order\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << resolution_label(rows[i].resolution) << ',' << format_double(rows[i].value) << ',';
        if (i > 0) out << format_double(rows[i].delta);
        out << ',';
        if (i > 1) out << format_double(rows[i].est_order);
        out << '\n';
    }
    return out.str();
}

std::string estimate_trace_csv(const std::vector<EstimateReport>& reports) {
    std::ostringstream out;
    out << "manifold,objective,restart,evals,best_ratio\n";
    for (const auto& rep : reports) {
        for (const auto& t : rep.trace) {
            out << rep.manifold << ',' << rep.objective << ',' << t.restart << ',' << t.evals
                << ',' << format_double(t.best_ratio) << '\n';
        }
    }
    return out.str();
}

} // namespace rineq
