// errors.hpp — Exception types used across the library
#pragma once

#include <stdexcept>
#include <string>

namespace oscbath {

// Bad configuration document or invalid run parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Time argument outside a tabulated coefficient range.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Fock-space truncation became unreliable (tail population above tolerance).
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested simulation window reaches the discrete-bath recurrence horizon.
struct RecurrenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fit window had too few points or degenerate data.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace oscbath
