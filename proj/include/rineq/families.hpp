#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "rineq/field.hpp"
#include "rineq/manifold.hpp"

namespace rineq {

/// Parameter box for family coefficients (CLI-overridable).
inline constexpr double kFamilyBoxLo = -3.0;
inline constexpr double kFamilyBoxHi = 3.0;

/// Lower bound kept between a shifted-trig field and zero.
inline constexpr double kShiftedTrigMargin = 0.5;

struct FamilySpec {
    std::string name; // exp-trig | shifted-trig | peak
    int n_params = 0;
};

/// Parse "exp-trig:4" style family strings.
FamilySpec parse_family_spec(const std::string& spec);

/// The k-th basis mode on the manifold's chart, as a positive-free smooth
/// field. Tori: frequency blocks of [sin(f w_i x_i)..., cos(f w_i x_i)...].
/// Sphere: low-degree polynomials in (z, x, y) = (cos t, sin t cos p, sin t sin p).
ScalarField family_mode(int k, const ManifoldSpec& m);

/// Largest k usable on this manifold (tori: unbounded, returns a large cap).
int family_mode_count(const ManifoldSpec& m);

/// Supremum of |mode_k| over the manifold; used by the shifted-trig margin.
double family_mode_sup(int k, const ManifoldSpec& m);

/// log of the unit-width peak bump: sum_i (cos(w_i (x_i - c_i)) - 1) on
/// tori, cos(theta) - 1 on the sphere. The peak family evaluates
/// exp(strength * exp(this / width^2)).
ScalarField peak_bump_log_field(const ManifoldSpec& m);

/// Build a positive smooth field from a catalog family:
///   exp-trig:     u = exp(sum a_k mode_k),             params = a
///   shifted-trig: u = c + sum a_k mode_k,              params = (c, a...)
///   peak:         u = exp(s * bump(width)),            params = (s[, width])
/// Throws InvalidFamily / NonPositiveFamily.
ScalarField function_family(const std::string& name, std::span<const double> params,
                            const ManifoldSpec& m);

/// Draw a parameter vector uniformly from the family box; shifted-trig
/// draws are rejection-sampled until the positivity margin holds.
std::vector<double> random_family_params(const std::string& name, int n_params,
                                         const ManifoldSpec& m, std::mt19937_64& rng);

/// Random point in the open chart interior: uniform per axis, with a small
/// offset from singular/bounded endpoints.
std::vector<double> random_interior_point(const ManifoldSpec& m, std::mt19937_64& rng);

} // namespace rineq
