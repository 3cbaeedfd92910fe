#include "permlim/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace permlim {

namespace {

// Runs one chunk worth of trials; Reduce accumulates within the chunk.
template <class Partial, class Worker>
std::vector<Partial> run_chunks(std::uint64_t samples, std::uint64_t seed, Worker worker) {
    std::vector<Partial> parts(kMcChunks);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned workers = std::min<unsigned>(hw, kMcChunks);
    std::atomic<int> next{0};
    auto drain = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= kMcChunks) return;
            std::uint64_t cnt = samples / kMcChunks + (static_cast<std::uint64_t>(c) < samples % kMcChunks ? 1 : 0);
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
            parts[static_cast<size_t>(c)] = worker(rng, cnt);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
    return parts;
}

}  // namespace

std::uint64_t mc_count(std::uint64_t samples, std::uint64_t seed,
                       const std::function<bool(Rng&)>& trial) {
    auto parts = run_chunks<std::uint64_t>(samples, seed, [&](Rng& rng, std::uint64_t cnt) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < cnt; ++i)
            if (trial(rng)) ++hits;
        return hits;
    });
    std::uint64_t total = 0;
    for (auto p : parts) total += p;
    return total;
}

Estimate mc_proportion(std::uint64_t samples, std::uint64_t seed,
                       const std::function<bool(Rng&)>& trial) {
    std::uint64_t hits = mc_count(samples, seed, trial);
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return {p, se, samples};
}

Estimate mc_mean(std::uint64_t samples, std::uint64_t seed,
                 const std::function<double(Rng&)>& trial) {
    struct Part {
        double sum = 0, sumsq = 0;
    };
    auto parts = run_chunks<Part>(samples, seed, [&](Rng& rng, std::uint64_t cnt) {
        Part p;
        for (std::uint64_t i = 0; i < cnt; ++i) {
            double v = trial(rng);
            p.sum += v;
            p.sumsq += v * v;
        }
        return p;
    });
    double sum = 0, sumsq = 0;
    for (const auto& p : parts) {
        sum += p.sum;
        sumsq += p.sumsq;
    }
    double n = static_cast<double>(samples);
    double mean = sum / n;
    double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), samples};
}

}  // namespace permlim
