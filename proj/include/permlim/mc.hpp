#pragma once

#include <cstdint>
#include <functional>

#include "permlim/estimate.hpp"
#include "permlim/rng.hpp"

namespace permlim {

/// Monte Carlo loops split the sample budget over a fixed number of chunks
/// with per-chunk derived seeds.  Chunks may run on worker threads; partial
/// results are reduced in chunk order, so the outcome depends only on
/// (samples, seed), never on scheduling.
inline constexpr int kMcChunks = 64;

/// Number of successes of `trial` over `samples` independent runs.
std::uint64_t mc_count(std::uint64_t samples, std::uint64_t seed,
                       const std::function<bool(Rng&)>& trial);

/// Success proportion with binomial standard error sqrt(p(1-p)/N).
Estimate mc_proportion(std::uint64_t samples, std::uint64_t seed,
                       const std::function<bool(Rng&)>& trial);

/// Sample mean of a real-valued trial with standard error s/sqrt(N).
Estimate mc_mean(std::uint64_t samples, std::uint64_t seed,
                 const std::function<double(Rng&)>& trial);

}  // namespace permlim
