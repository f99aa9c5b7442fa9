#pragma once

#include <cstdint>
#include <vector>

#include "common/error.hpp"

namespace smarttrap::imaging {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// Row-major 8-bit-per-channel color raster.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {255, 255, 255});

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

    Rgb& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    const Rgb& at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    std::vector<Rgb>& pixels() { return pixels_; }
    const std::vector<Rgb>& pixels() const { return pixels_; }

    bool operator==(const RgbImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Row-major 8-bit grayscale raster.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    std::uint8_t at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    std::vector<std::uint8_t>& pixels() { return pixels_; }
    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Row-major two-level raster; 1 = foreground, 0 = background.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

    bool get(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool v) { pixels_[static_cast<size_t>(y) * width_ + x] = v ? 1 : 0; }

    /// Out-of-bounds coordinates read as background.
    bool get_clamped(int x, int y) const { return in_bounds(x, y) && get(x, y); }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    size_t foreground_count() const;

    bool operator==(const BinaryImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;  // one byte per pixel, values {0,1}
};

/// Square morphology kernel with odd side length, anchored at its centre.
struct StructuringElement {
    int size = 3;

    static StructuringElement square(int size) {
        if (size < 1 || size % 2 == 0) {
            throw ValidationError("structuring element size must be odd and >= 1");
        }
        return {size};
    }

    int radius() const { return size / 2; }
};

/// ITU-R BT.601 luma, rounded to nearest.
GrayImage to_grayscale(const RgbImage& img);

/// Pixels strictly lighter than the threshold become white (foreground in the
/// pre-inversion sense); pixels at or below it become black.
constexpr std::uint8_t kDefaultThreshold = 45;
BinaryImage binarize(const GrayImage& img, std::uint8_t threshold = kDefaultThreshold);

/// Flip every pixel. Involution.
BinaryImage invert(const BinaryImage& img);

}  // namespace smarttrap::imaging
