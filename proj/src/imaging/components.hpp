#pragma once

#include <vector>

#include "imaging/image.hpp"

namespace smarttrap::imaging {

struct BoundingBox {
    int x = 0;  // top-left column
    int y = 0;  // top-left row
    int w = 0;
    int h = 0;

    bool operator==(const BoundingBox&) const = default;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
};

struct Component {
    int label = 0;  // 1-based, assigned in row-major order of first pixel
    int pixel_count = 0;
    BoundingBox bbox;

    bool operator==(const Component&) const = default;
};

/// Maximal 8-connected foreground components with tight bounding boxes.
/// Labels follow row-major order of each component's first-scanned pixel,
/// so the output order is deterministic.
std::vector<Component> connected_components(const BinaryImage& img);

}  // namespace smarttrap::imaging
