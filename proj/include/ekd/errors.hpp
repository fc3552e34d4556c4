#pragma once

#include <stdexcept>
#include <string>

namespace ekd {

/// A truncated series or iteration failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The design cannot estimate the covariance parameters (singular information).
struct NonEstimableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum-likelihood fitting failed for every candidate parameter value.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A config, CSV or document could not be read or parsed.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A design document was written for a different grid.
struct DesignGridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ekd
