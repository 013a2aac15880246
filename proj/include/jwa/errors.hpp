#pragma once

#include <stdexcept>

namespace jwa {

// Bad arguments: out-of-range values, coprimality violations, malformed CLI input.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// gcd(a, k) != 1 where an inverse mod k was required.
struct not_invertible : invalid_input {
    using invalid_input::invalid_input;
};

// Exhaustive computation requested above the configured ceiling.
struct too_large : invalid_input {
    using invalid_input::invalid_input;
};

// An internal cross-check failed (two independent routes disagree).
struct inconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// brute-force and analytic N(k) disagree.
struct method_mismatch : inconsistency {
    using inconsistency::inconsistency;
};

}  // namespace jwa
