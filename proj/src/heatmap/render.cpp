#include "heatmap/render.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "common/error.hpp"

namespace smarttrap::heatmap {

Rgba ramp_color(double intensity) {
    struct Stop {
        double t;
        std::uint8_t r, g, b;
    };
    // The first stop carries blue's hue; transparency comes from the alpha
    // channel going to zero with intensity.
    static constexpr Stop stops[] = {
        {0.00, 0, 0, 255},    // transparent (blue hue)
        {0.25, 0, 0, 255},    // blue
        {0.50, 0, 255, 0},    // green
        {0.75, 255, 255, 0},  // yellow
        {1.00, 255, 0, 0},    // red
    };
    double t = std::clamp(intensity, 0.0, 1.0);
    for (size_t i = 1; i < std::size(stops); ++i) {
        if (t <= stops[i].t) {
            const Stop& lo = stops[i - 1];
            const Stop& hi = stops[i];
            double f = (t - lo.t) / (hi.t - lo.t);
            auto mix = [f](std::uint8_t a, std::uint8_t b) {
                return static_cast<std::uint8_t>(std::lround(a + f * (b - a)));
            };
            return {mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b), 255};
        }
    }
    return {255, 0, 0, 255};
}

RgbaImage render_raster(const HeatGrid& grid, const RenderConfig& config) {
    config.validate();
    RgbaImage img;
    img.width = grid.cols;
    img.height = grid.rows;
    img.pixels.assign(static_cast<size_t>(grid.cols) * grid.rows, Rgba{});
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.cols; ++col) {
            double intensity = grid.intensity_at(col, row);
            if (intensity <= 0.0) continue;  // fully transparent
            Rgba c = ramp_color(intensity);
            c.a = static_cast<std::uint8_t>(std::lround(255.0 * config.opacity * intensity));
            // Grid row 0 is south; raster row 0 is north.
            img.at(col, grid.rows - 1 - row) = c;
        }
    }
    return img;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

void put_chunk(std::string& out, const char type[4], const std::string& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    std::string body(type, 4);
    body += data;
    out += body;
    std::uint32_t crc = static_cast<std::uint32_t>(
        ::crc32(0, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size())));
    put_u32(out, crc);
}

}  // namespace

std::string encode_png(const RgbaImage& img) {
    if (img.width <= 0 || img.height <= 0) {
        throw ValidationError("png raster must be non-empty");
    }

    // Filter byte 0 (None) before every scanline.
    std::string raster;
    raster.reserve(static_cast<size_t>(img.height) * (1 + 4 * img.width));
    for (int y = 0; y < img.height; ++y) {
        raster.push_back('\0');
        for (int x = 0; x < img.width; ++x) {
            const Rgba& p = img.at(x, y);
            raster.push_back(static_cast<char>(p.r));
            raster.push_back(static_cast<char>(p.g));
            raster.push_back(static_cast<char>(p.b));
            raster.push_back(static_cast<char>(p.a));
        }
    }

    uLongf bound = ::compressBound(static_cast<uLong>(raster.size()));
    std::string compressed(bound, '\0');
    if (::compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                    reinterpret_cast<const Bytef*>(raster.data()),
                    static_cast<uLong>(raster.size()), 6) != Z_OK) {
        throw IoError("png: deflate failed");
    }
    compressed.resize(bound);

    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(img.width));
    put_u32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(6);  // color type RGBA
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter
    ihdr.push_back(0);  // no interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", compressed);
    put_chunk(out, "IEND", "");
    return out;
}

void write_png_file(const RgbaImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    std::string bytes = encode_png(img);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("png write failed for '" + path + "'");
}

}  // namespace smarttrap::heatmap
