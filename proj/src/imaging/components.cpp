#include "imaging/components.hpp"

#include <algorithm>

namespace smarttrap::imaging {

std::vector<Component> connected_components(const BinaryImage& img) {
    const int w = img.width();
    const int h = img.height();
    std::vector<int> labels(static_cast<size_t>(w) * h, 0);
    std::vector<Component> out;

    // Iterative flood fill; the explicit stack keeps 640x480 frames safe.
    std::vector<std::pair<int, int>> stack;
    int next_label = 1;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!img.get(x, y) || labels[static_cast<size_t>(y) * w + x] != 0) continue;
            Component comp;
            comp.label = next_label++;
            int min_x = x, max_x = x, min_y = y, max_y = y;
            stack.clear();
            stack.emplace_back(x, y);
            labels[static_cast<size_t>(y) * w + x] = comp.label;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++comp.pixel_count;
                min_x = std::min(min_x, cx);
                max_x = std::max(max_x, cx);
                min_y = std::min(min_y, cy);
                max_y = std::max(max_y, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        int nx = cx + dx, ny = cy + dy;
                        if (!img.in_bounds(nx, ny) || !img.get(nx, ny)) continue;
                        int& lab = labels[static_cast<size_t>(ny) * w + nx];
                        if (lab != 0) continue;
                        lab = comp.label;
                        stack.emplace_back(nx, ny);
                    }
                }
            }
            comp.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
            out.push_back(comp);
        }
    }
    return out;
}

}  // namespace smarttrap::imaging
