#pragma once

#include <stdexcept>

namespace infocost {

// Parameters violate the finite-utility condition gamma*(1+v0*T) - v0*T > 0.
struct InfeasibleParameters : std::domain_error {
    using std::domain_error::domain_error;
};

// A wealth argument was zero or negative.
struct NonpositiveWealth : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operation defined only for gamma != 1 was called with gamma = 1
// (the logarithmic investor is served by a dedicated code path).
struct LogGammaUnsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A time argument fell outside [0, T].
struct TimeOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Annualization requires a strictly positive horizon.
struct ZeroHorizon : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The requested asymptotic regime has no closed-form limit.
struct UnsupportedLimit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An internal sanity check failed (e.g. a welfare cost came out negative
// beyond rounding tolerance); indicates a bug, not bad user input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace infocost
