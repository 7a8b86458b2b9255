#pragma once

#include <stdexcept>
#include <string>

namespace empathy {

// Bad input shape or violated invariant: dimension mismatch, invalid
// probability vector, out-of-range parameter, malformed config field.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iterative solver stopped at its iteration cap above the requested residual.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, double final_residual)
        : std::runtime_error(msg), residual(final_residual) {}
    double residual;
};

// The per-step coupled gain system could not be solved.
struct SingularSystemError : std::runtime_error {
    SingularSystemError(const std::string& msg, int t)
        : std::runtime_error(msg), time_step(t) {}
    int time_step;
};

// Conditioning event has (numerically) vanishing probability.
struct DegenerateConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace empathy
