#include "imaging/image.hpp"

#include <cmath>

namespace smarttrap::imaging {

namespace {
void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("image dimensions must be positive (got " + std::to_string(width) +
                              "x" + std::to_string(height) + ")");
    }
}
}  // namespace

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<size_t>(width) * height, fill);
}

BinaryImage::BinaryImage(int width, int height, bool fill) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<size_t>(width) * height, fill ? 1 : 0);
}

size_t BinaryImage::foreground_count() const {
    size_t n = 0;
    for (auto p : pixels_) n += p;
    return n;
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    const auto& src = img.pixels();
    auto& dst = out.pixels();
    for (size_t i = 0; i < src.size(); ++i) {
        double luma = 0.299 * src[i].r + 0.587 * src[i].g + 0.114 * src[i].b;
        long v = std::lround(luma);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        dst[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

BinaryImage binarize(const GrayImage& img, std::uint8_t threshold) {
    BinaryImage out(img.width(), img.height());
    const auto& src = img.pixels();
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.set(x, y, src[static_cast<size_t>(y) * img.width() + x] > threshold);
        }
    }
    return out;
}

BinaryImage invert(const BinaryImage& img) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.set(x, y, !img.get(x, y));
        }
    }
    return out;
}

}  // namespace smarttrap::imaging
