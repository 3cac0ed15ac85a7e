#pragma once

#include <stdexcept>
#include <string>

namespace rineq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Division by a jet whose value part is zero.
struct DegenerateValue : Error {
    using Error::Error;
};

// log/sqrt of a non-positive value, or a positivity-required field
// evaluated to u <= 0.
struct PositivityViolation : Error {
    using Error::Error;
};

// Metric not invertible within tolerance at the requested point.
struct SingularMetric : Error {
    using Error::Error;
};

// Unknown function-family name or unusable parameter count.
struct InvalidFamily : Error {
    using Error::Error;
};

// shifted-trig field whose lower bound falls below the positivity margin.
struct NonPositiveFamily : Error {
    using Error::Error;
};

// Ratio requested while the denominator functional sits below its floor.
struct DegenerateRatio : Error {
    using Error::Error;
};

// Bad CLI / run configuration (maps to exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace rineq
