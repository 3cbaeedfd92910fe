#pragma once

#include <cstdint>
#include <random>

namespace permlim {

/// splitmix64 step; used to derive independent stream seeds from (seed, i).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// mt19937_64 with portable uniform draws (no std::*_distribution, whose
/// output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0,1), 53 bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., n-1}.
    int uniform_int(int n) { return static_cast<int>(uniform01() * n); }

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace permlim
