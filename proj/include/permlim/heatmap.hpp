#pragma once

#include <cstdint>
#include <string>

#include "permlim/graphon.hpp"

namespace permlim {

// Raster settings for the P2 graymap emitters.  resolution is the side
// length in pixels and must lie in [16, 4096].  samples == 0 picks an
// automatic budget for sampled renders (64 per pixel, capped at 2^24);
// kernel renders ignore it.
struct HeatmapConfig {
    int resolution = 256;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// ASCII portable graymap (P2, maxval 255) of the measure, black at zero
// density.  The origin is the lower-left corner: the first pixel row is the
// top band y in [1 - 1/resolution, 1).  A single comment line after the
// magic number records the object and the resolved configuration, so equal
// configs give byte-identical files.
//
// Permutons rasterize per-cell sampled mass, normalized as a density
// relative to the Lebesgue measure and clamped at 1 (the uniform permuton
// renders near-white, singular parts saturate).  Pointwise graphons render
// kernel values exactly; the permuton-induced graphon has no pointwise
// kernel and falls back to a sampled render (noted in the comment line):
// per round, `resolution` points are drawn and sorted by the ground
// coordinate, and each pixel averages the adjacency indicator across rounds.
std::string heatmap_pgm(const Permuton& mu, const HeatmapConfig& config);
std::string heatmap_pgm(const Graphon& w, const HeatmapConfig& config);

}  // namespace permlim
