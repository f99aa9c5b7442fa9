#pragma once

#include <iosfwd>
#include <string>

#include "imaging/image.hpp"

namespace smarttrap::imaging {

// Binary Netpbm codecs: PPM (P6) for color frames, PGM (P5) for gray ones.
// BinaryImage round-trips through PGM with foreground stored as 255.
// Readers accept header comments and any maxval up to 255; writers always
// emit maxval 255 with a minimal canonical header.

RgbImage read_ppm(std::istream& in, const std::string& origin = "<stream>");
RgbImage read_ppm_file(const std::string& path);
void write_ppm(const RgbImage& img, std::ostream& out);
void write_ppm_file(const RgbImage& img, const std::string& path);

GrayImage read_pgm(std::istream& in, const std::string& origin = "<stream>");
GrayImage read_pgm_file(const std::string& path);
void write_pgm(const GrayImage& img, std::ostream& out);
void write_pgm_file(const GrayImage& img, const std::string& path);

/// Foreground -> 255, background -> 0.
GrayImage binary_to_gray(const BinaryImage& img);
/// Nonzero -> foreground.
BinaryImage gray_to_binary(const GrayImage& img);

}  // namespace smarttrap::imaging
