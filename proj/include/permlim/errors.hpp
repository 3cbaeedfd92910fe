#pragma once

#include <stdexcept>

namespace permlim {

/// Thrown when an operation is asked for a size or object form outside its
/// supported range (e.g. exact pattern counting beyond the enumeration caps,
/// pointwise kernel of a sampler-only graphon).
struct unsupported_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative numerical procedure fails to converge.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace permlim
