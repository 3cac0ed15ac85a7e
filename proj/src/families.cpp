#include "rineq/families.hpp"

#include <cmath>
#include <numbers>

#include "rineq/util.hpp"

namespace rineq {

namespace {

constexpr int kFieldOrder = 3;

bool is_sphere_chart(const ManifoldSpec& m) {
    for (char s : m.chart.singular)
        if (s) return true;
    return false;
}

// Sphere ambient coordinates as jets at (theta, phi).
struct SphereJets {
    Jet z, x, y;
};

SphereJets sphere_jets(std::span<const double> p) {
    Jet theta = Jet::seed(0, p[0], 2, kFieldOrder);
    Jet phi = Jet::seed(1, p[1], 2, kFieldOrder);
    Jet st = sin(theta);
    SphereJets s;
    s.z = cos(theta);
    s.x = st * cos(phi);
    s.y = st * sin(phi);
    return s;
}

Jet sphere_mode_jet(int k, std::span<const double> p) {
    SphereJets s = sphere_jets(p);
    switch (k) {
        case 0: return s.z;
        case 1: return s.x;
        case 2: return s.y;
        case 3: return s.z * s.z;
        case 4: return s.x * s.z;
        case 5: return s.y * s.z;
        case 6: return s.x * s.x - s.y * s.y;
        case 7: return s.x * s.y;
        default: throw InvalidFamily("sphere families support at most 8 parameters");
    }
}

Jet torus_mode_jet(int k, const ManifoldSpec& m, std::span<const double> p) {
    const int dim = m.dim();
    int freq = k / (2 * dim) + 1;
    int r = k % (2 * dim);
    int axis = r % dim;
    bool is_sin = r < dim;
    double omega = freq * 2.0 * std::numbers::pi / m.chart.span(axis);
    Jet arg = Jet::seed(axis, p[static_cast<std::size_t>(axis)], dim, kFieldOrder) * omega;
    return is_sin ? sin(arg) : cos(arg);
}

Jet mode_jet(int k, const ManifoldSpec& m, std::span<const double> p) {
    return is_sphere_chart(m) ? sphere_mode_jet(k, p) : torus_mode_jet(k, m, p);
}

Jet bump_log_jet(const ManifoldSpec& m, std::span<const double> p) {
    if (is_sphere_chart(m)) {
        // zonal bump at the north pole, smooth across it
        Jet theta = Jet::seed(0, p[0], 2, kFieldOrder);
        return cos(theta) - 1.0;
    }
    const int dim = m.dim();
    Jet acc = Jet::constant(0.0, dim, kFieldOrder);
    for (int ax = 0; ax < dim; ++ax) {
        double omega = 2.0 * std::numbers::pi / m.chart.span(ax);
        double center = 0.5 * (m.chart.lower[static_cast<std::size_t>(ax)] +
                               m.chart.upper[static_cast<std::size_t>(ax)]);
        Jet arg = (Jet::seed(ax, p[static_cast<std::size_t>(ax)], dim, kFieldOrder) - center) * omega;
        acc += cos(arg) - 1.0;
    }
    return acc;
}

Jet bump_jet(const ManifoldSpec& m, std::span<const double> p, double width) {
    return exp(bump_log_jet(m, p) * (1.0 / (width * width)));
}

double shifted_lower_bound(std::span<const double> params, const ManifoldSpec& m) {
    double bound = params[0];
    for (std::size_t k = 1; k < params.size(); ++k)
        bound -= std::abs(params[k]) * family_mode_sup(static_cast<int>(k - 1), m);
    return bound;
}

} // namespace

FamilySpec parse_family_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("family spec must look like name:count, e.g. exp-trig:4");
    FamilySpec out;
    out.name = spec.substr(0, colon);
    try {
        out.n_params = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("family parameter count is not an integer: " + spec);
    }
    if (out.name != "exp-trig" && out.name != "shifted-trig" && out.name != "peak")
        throw ConfigError("unknown family '" + out.name + "'");
    if (out.n_params < 0) throw ConfigError("family parameter count must be >= 0");
    return out;
}

int family_mode_count(const ManifoldSpec& m) {
    return is_sphere_chart(m) ? 8 : 1024;
}

double family_mode_sup(int k, const ManifoldSpec& m) {
    if (!is_sphere_chart(m)) return 1.0;
    switch (k) {
        case 4:
        case 5:
        case 7: return 0.5;
        default: return 1.0;
    }
}

ScalarField family_mode(int k, const ManifoldSpec& m) {
    if (k < 0 || k >= family_mode_count(m)) throw InvalidFamily("mode index out of range");
    ScalarField f;
    f.name = "mode" + std::to_string(k);
    ManifoldSpec spec = m;
    f.eval = [k, spec](std::span<const double> x) { return mode_jet(k, spec, x); };
    return f;
}

ScalarField peak_bump_log_field(const ManifoldSpec& m) {
    ScalarField f;
    f.name = "bump-log";
    ManifoldSpec spec = m;
    f.eval = [spec](std::span<const double> x) { return bump_log_jet(spec, x); };
    return f;
}

ScalarField function_family(const std::string& name, std::span<const double> params,
                            const ManifoldSpec& m) {
    ManifoldSpec spec = m;
    std::vector<double> p(params.begin(), params.end());
    ScalarField f;
    f.positivity_required = true;

    if (name == "exp-trig") {
        if (static_cast<int>(p.size()) > family_mode_count(m))
            throw InvalidFamily("too many exp-trig parameters for this manifold");
        f.name = "exp-trig";
        f.eval = [p, spec](std::span<const double> x) {
            Jet acc = Jet::constant(0.0, spec.dim(), kFieldOrder);
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (p[k] != 0.0) acc += mode_jet(static_cast<int>(k), spec, x) * p[k];
            }
            return exp(acc);
        };
        return f;
    }

    if (name == "shifted-trig") {
        if (p.empty()) throw InvalidFamily("shifted-trig needs at least the shift parameter");
        if (static_cast<int>(p.size()) - 1 > family_mode_count(m))
            throw InvalidFamily("too many shifted-trig parameters for this manifold");
        if (shifted_lower_bound(p, m) < kShiftedTrigMargin)
            throw NonPositiveFamily("shifted-trig margin violated: min u may fall below " +
                                    std::to_string(kShiftedTrigMargin));
        f.name = "shifted-trig";
        f.eval = [p, spec](std::span<const double> x) {
            Jet acc = Jet::constant(p[0], spec.dim(), kFieldOrder);
            for (std::size_t k = 1; k < p.size(); ++k) {
                if (p[k] != 0.0) acc += mode_jet(static_cast<int>(k - 1), spec, x) * p[k];
            }
            return acc;
        };
        return f;
    }

    if (name == "peak") {
        if (p.empty()) throw InvalidFamily("peak needs at least the strength parameter");
        double strength = p[0];
        // width mapped away from zero so box draws stay resolvable
        double width = p.size() >= 2 ? 0.15 + std::abs(p[1]) : 0.65;
        f.name = "peak";
        f.eval = [strength, width, spec](std::span<const double> x) {
            return exp(bump_jet(spec, x, width) * strength);
        };
        return f;
    }

    throw InvalidFamily("unknown family '" + name + "'");
}

std::vector<double> random_family_params(const std::string& name, int n_params,
                                         const ManifoldSpec& m, std::mt19937_64& rng) {
    std::vector<double> p(static_cast<std::size_t>(n_params));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (auto& v : p) v = uniform(rng, kFamilyBoxLo, kFamilyBoxHi);
        if (name != "shifted-trig") return p;
        if (!p.empty() && shifted_lower_bound(p, m) >= kShiftedTrigMargin) return p;
        if (p.empty()) return p;
    }
    throw NonPositiveFamily("could not draw valid shifted-trig parameters in 1000 attempts");
}

std::vector<double> random_interior_point(const ManifoldSpec& m, std::mt19937_64& rng) {
    std::vector<double> x(static_cast<std::size_t>(m.dim()));
    for (int ax = 0; ax < m.dim(); ++ax) {
        double lo = m.chart.lower[static_cast<std::size_t>(ax)];
        double hi = m.chart.upper[static_cast<std::size_t>(ax)];
        if (m.chart.periodic[static_cast<std::size_t>(ax)]) {
            x[static_cast<std::size_t>(ax)] = uniform(rng, lo, hi);
        } else {
            double margin = 1e-3 * (hi - lo);
            x[static_cast<std::size_t>(ax)] = uniform(rng, lo + margin, hi - margin);
        }
    }
    return x;
}

} // namespace rineq
