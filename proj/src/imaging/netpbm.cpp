#include "imaging/netpbm.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace smarttrap::imaging {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& origin) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw ParseError(origin + ": truncated netpbm header");
    return tok;
}

int parse_header_int(std::istream& in, const std::string& origin, const char* what, int max) {
    std::string tok = next_token(in, origin);
    int value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') {
            throw ParseError(origin + ": bad " + what + " '" + tok + "'");
        }
        value = value * 10 + (ch - '0');
        if (value > max) throw ParseError(origin + ": " + what + " out of range");
    }
    if (tok.empty()) throw ParseError(origin + ": bad " + what);
    return value;
}

struct PnmHeader {
    int width;
    int height;
    int maxval;
};

PnmHeader read_header(std::istream& in, const char* magic, const std::string& origin) {
    std::string tok = next_token(in, origin);
    if (tok != magic) {
        throw ParseError(origin + ": expected " + magic + " magic, got '" + tok + "'");
    }
    PnmHeader hdr{};
    hdr.width = parse_header_int(in, origin, "width", 1 << 20);
    hdr.height = parse_header_int(in, origin, "height", 1 << 20);
    hdr.maxval = parse_header_int(in, origin, "maxval", 65535);
    if (hdr.width == 0 || hdr.height == 0) {
        throw ParseError(origin + ": zero image dimension");
    }
    if (hdr.maxval == 0 || hdr.maxval > 255) {
        throw ParseError(origin + ": unsupported maxval " + std::to_string(hdr.maxval));
    }
    // Exactly one whitespace byte separates the header from the raster.
    int c = in.get();
    if (c == EOF || !std::isspace(c)) {
        throw ParseError(origin + ": missing raster separator");
    }
    return hdr;
}

void read_raster(std::istream& in, char* dst, size_t n, const std::string& origin) {
    in.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in.gcount()) != n) {
        throw ParseError(origin + ": truncated raster data");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

}  // namespace

RgbImage read_ppm(std::istream& in, const std::string& origin) {
    PnmHeader hdr = read_header(in, "P6", origin);
    RgbImage img(hdr.width, hdr.height);
    read_raster(in, reinterpret_cast<char*>(img.pixels().data()),
                static_cast<size_t>(hdr.width) * hdr.height * 3, origin);
    return img;
}

RgbImage read_ppm_file(const std::string& path) {
    auto in = open_input(path);
    return read_ppm(in, path);
}

void write_ppm(const RgbImage& img, std::ostream& out) {
    out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixels().size() * 3));
    if (!out) throw IoError("ppm write failed");
}

void write_ppm_file(const RgbImage& img, const std::string& path) {
    auto out = open_output(path);
    write_ppm(img, out);
}

GrayImage read_pgm(std::istream& in, const std::string& origin) {
    PnmHeader hdr = read_header(in, "P5", origin);
    GrayImage img(hdr.width, hdr.height);
    read_raster(in, reinterpret_cast<char*>(img.pixels().data()),
                static_cast<size_t>(hdr.width) * hdr.height, origin);
    return img;
}

GrayImage read_pgm_file(const std::string& path) {
    auto in = open_input(path);
    return read_pgm(in, path);
}

void write_pgm(const GrayImage& img, std::ostream& out) {
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixels().size()));
    if (!out) throw IoError("pgm write failed");
}

void write_pgm_file(const GrayImage& img, const std::string& path) {
    auto out = open_output(path);
    write_pgm(img, out);
}

GrayImage binary_to_gray(const BinaryImage& img) {
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.at(x, y) = img.get(x, y) ? 255 : 0;
        }
    }
    return out;
}

BinaryImage gray_to_binary(const GrayImage& img) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.set(x, y, img.at(x, y) != 0);
        }
    }
    return out;
}

}  // namespace smarttrap::imaging
