#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "rineq/jet.hpp"

namespace rineq {

/// A smooth scalar function on a chart, evaluable to an order-3 jet at any
/// chart point. When positivity_required is set, evaluation throws
/// PositivityViolation the moment a non-positive value shows up.
struct ScalarField {
    std::function<Jet(std::span<const double>)> eval;
    bool positivity_required = false;
    std::string name;

    Jet jet_at(std::span<const double> x) const {
        Jet j = eval(x);
        if (positivity_required && !(j.value() > 0.0)) {
            throw PositivityViolation("field '" + name + "' is non-positive at a sampled point");
        }
        return j;
    }

    double value_at(std::span<const double> x) const { return jet_at(x).value(); }
};

/// sqrt(u) and log(u) as fields sharing u's evaluator; order 3 preserved.
std::pair<ScalarField, ScalarField> derived_fields(const ScalarField& u);

} // namespace rineq
