#pragma once

#include <stdexcept>
#include <string>

namespace hardyq {

// Bad parameters or inputs outside the documented domain. CLI exit code 2.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iteration (bisection, matching, eigensolve, fixed point) failed to
// converge within its budget. CLI exit code 3.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The ODE integrator escaped or stalled before producing a usable answer.
struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File system / serialization problems. CLI exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hardyq
