#include "permlim/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "permlim/descriptor.hpp"
#include "permlim/rng.hpp"

namespace permlim {

namespace {

constexpr std::uint64_t kAutoSampleCap = std::uint64_t{1} << 24;

void check_resolution(int r) {
    if (r < 16 || r > 4096)
        throw std::invalid_argument("heatmap resolution must lie in [16, 4096], got " +
                                    std::to_string(r));
}

std::uint64_t resolve_samples(const HeatmapConfig& cfg) {
    if (cfg.samples > 0) return cfg.samples;
    const std::uint64_t pixels =
        static_cast<std::uint64_t>(cfg.resolution) * static_cast<std::uint64_t>(cfg.resolution);
    return std::min<std::uint64_t>(64 * pixels, kAutoSampleCap);
}

int cell_of(double t, int r) {
    const int i = static_cast<int>(t * r);
    return std::clamp(i, 0, r - 1);
}

// gray[j * r + i] is the pixel for x cell i, y cell j; rows are emitted top
// to bottom so that j = 0 lands at the lower-left.
std::string assemble_pgm(const std::vector<int>& gray, int r, const std::string& object_json,
                         const HeatmapConfig& cfg, std::uint64_t samples,
                         const std::string& mode) {
    std::string out;
    out.reserve(gray.size() * 4 + 256);
    out += "P2\n# heatmap object=" + object_json + " resolution=" + std::to_string(r) +
           " seed=" + std::to_string(cfg.seed) + " samples=" + std::to_string(samples) +
           " mode=" + mode + "\n";
    out += std::to_string(r) + " " + std::to_string(r) + "\n255\n";
    for (int j = r - 1; j >= 0; --j) {
        for (int i = 0; i < r; ++i) {
            if (i > 0) out += ' ';
            out += std::to_string(gray[static_cast<std::size_t>(j) * r + i]);
        }
        out += '\n';
    }
    return out;
}

int density_gray(std::uint64_t count, std::uint64_t total, double cell_area) {
    const double density = static_cast<double>(count) / (static_cast<double>(total) * cell_area);
    return static_cast<int>(std::lround(255.0 * std::min(1.0, density)));
}

std::vector<int> sampled_inversion_gray(const Permuton& mu, int r, std::uint64_t samples,
                                        std::uint64_t seed, std::uint64_t* used) {
    const std::uint64_t pixels = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r);
    const std::uint64_t rounds = std::max<std::uint64_t>(1, samples / pixels);
    *used = rounds * pixels;
    std::vector<float> acc(pixels, 0.0f);
    Rng rng(seed);
    std::vector<Point> pts;
    for (std::uint64_t round = 0; round < rounds; ++round) {
        pts = mu.sample(r, rng);
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (pts[i].y > pts[j].y) acc[static_cast<std::size_t>(i) * r + j] += 1.0f;
    }
    std::vector<int> gray(pixels, 0);
    auto avg = [&](int i, int j) {
        return acc[static_cast<std::size_t>(std::min(i, j)) * r + std::max(i, j)] /
               static_cast<float>(rounds);
    };
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            float v;
            if (i == j) {
                float sum = 0.0f;
                int n = 0;
                if (i > 0) sum += avg(i, i - 1), ++n;
                if (i + 1 < r) sum += avg(i, i + 1), ++n;
                v = sum / static_cast<float>(n);
            } else {
                v = avg(i, j);
            }
            gray[static_cast<std::size_t>(j) * r + i] =
                static_cast<int>(std::lround(255.0f * v));
        }
    }
    return gray;
}

}  // namespace

std::string heatmap_pgm(const Permuton& mu, const HeatmapConfig& config) {
    check_resolution(config.resolution);
    const int r = config.resolution;
    const std::uint64_t samples = resolve_samples(config);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(r) * r, 0);
    Rng rng(config.seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
        const Point p = mu.sample_point(rng);
        counts[static_cast<std::size_t>(cell_of(p.y, r)) * r + cell_of(p.x, r)] += 1;
    }
    const double cell_area = 1.0 / (static_cast<double>(r) * r);
    std::vector<int> gray(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        gray[k] = density_gray(counts[k], samples, cell_area);
    return assemble_pgm(gray, r, permuton_json(mu), config, samples, "sampled");
}

std::string heatmap_pgm(const Graphon& w, const HeatmapConfig& config) {
    check_resolution(config.resolution);
    const int r = config.resolution;
    if (w.pointwise()) {
        std::vector<int> gray(static_cast<std::size_t>(r) * r);
        for (int j = 0; j < r; ++j) {
            const double y = (j + 0.5) / r;
            for (int i = 0; i < r; ++i) {
                const double v = std::clamp(w.kernel((i + 0.5) / r, y), 0.0, 1.0);
                gray[static_cast<std::size_t>(j) * r + i] =
                    static_cast<int>(std::lround(255.0 * v));
            }
        }
        return assemble_pgm(gray, r, graphon_json(w), config, 0, "kernel");
    }
    const auto* induced = w.get_if<Graphon::PermutonInduced>();
    std::uint64_t used = 0;
    auto gray = sampled_inversion_gray(induced->mu, r, resolve_samples(config), config.seed,
                                       &used);
    return assemble_pgm(gray, r, graphon_json(w), config, used,
                        "sampled (no pointwise kernel; sampled fallback)");
}

}  // namespace permlim
