#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatmap/grid.hpp"

namespace smarttrap::heatmap {

struct Rgba {
    std::uint8_t r = 0, g = 0, b = 0, a = 0;

    bool operator==(const Rgba&) const = default;
};

struct RgbaImage {
    int width = 0;
    int height = 0;
    std::vector<Rgba> pixels;  // row-major, row 0 at the top

    Rgba& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    const Rgba& at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

/// Fixed 5-stop ramp (transparent -> blue -> green -> yellow -> red); the
/// colour channels interpolate between stops, alpha is handled separately.
Rgba ramp_color(double intensity);

/// One pixel per cell, top row = northern edge, alpha = opacity * intensity.
RgbaImage render_raster(const HeatGrid& grid, const RenderConfig& config);

/// Minimal RGBA PNG (8-bit, non-interlaced, fixed zlib level), so identical
/// inputs give identical bytes.
std::string encode_png(const RgbaImage& img);
void write_png_file(const RgbaImage& img, const std::string& path);

}  // namespace smarttrap::heatmap
