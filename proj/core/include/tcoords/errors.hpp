#pragma once

#include <stdexcept>
#include <string>

namespace tcoords {

/// Bad user input: out-of-range parameters, malformed configs, contract violations.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: singular systems, non-converged solvers, failed lifts.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem / parsing failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tcoords
