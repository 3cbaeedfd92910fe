#pragma once

#include <cstdint>

namespace permlim {

/// A Monte Carlo (or exact) value with its standard error.  Exact results
/// carry std_error == 0 and samples == 0.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

}  // namespace permlim
