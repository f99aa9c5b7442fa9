#pragma once

#include "imaging/image.hpp"

namespace smarttrap::imaging {

/// Output pixel is foreground iff every pixel under the kernel is foreground.
/// Out-of-bounds reads as background, so foreground touching the frame border
/// erodes inward.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);

/// Output pixel is foreground iff any pixel under the kernel is foreground.
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

/// Erosion then dilation; removes foreground specks smaller than the kernel.
BinaryImage open(const BinaryImage& img, const StructuringElement& se);

/// Dilation then erosion; fills background holes smaller than the kernel.
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

/// Noise cleanup applied to the inverted frame: opening (kills sub-kernel
/// white specks) followed by closing (fills sub-kernel holes in blobs).
BinaryImage denoise(const BinaryImage& img, const StructuringElement& se);

}  // namespace smarttrap::imaging
