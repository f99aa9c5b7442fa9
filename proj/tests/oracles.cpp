#include "oracles.hpp"

#include <algorithm>

namespace oracles {

BinaryImage window_min(const BinaryImage& img, int radius) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            bool all = true;
            for (int dy = -radius; dy <= radius && all; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (!img.get_clamped(x + dx, y + dy)) {
                        all = false;
                        break;
                    }
                }
            }
            out.set(x, y, all);
        }
    }
    return out;
}

BinaryImage window_max(const BinaryImage& img, int radius) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            bool any = false;
            for (int dy = -radius; dy <= radius && !any; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (img.get_clamped(x + dx, y + dy)) {
                        any = true;
                        break;
                    }
                }
            }
            out.set(x, y, any);
        }
    }
    return out;
}

namespace {

void fill_recursive(const BinaryImage& img, std::vector<int>& labels, int x, int y, int label,
                    FloodComponent& comp) {
    labels[static_cast<size_t>(y) * img.width() + x] = label;
    ++comp.pixel_count;
    int x1 = comp.bbox.x + comp.bbox.w - 1;
    int y1 = comp.bbox.y + comp.bbox.h - 1;
    comp.bbox.x = std::min(comp.bbox.x, x);
    comp.bbox.y = std::min(comp.bbox.y, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
    comp.bbox.w = x1 - comp.bbox.x + 1;
    comp.bbox.h = y1 - comp.bbox.y + 1;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height()) continue;
            if (!img.get(nx, ny)) continue;
            if (labels[static_cast<size_t>(ny) * img.width() + nx] != 0) continue;
            fill_recursive(img, labels, nx, ny, label, comp);
        }
    }
}

}  // namespace

std::vector<FloodComponent> flood_components(const BinaryImage& img) {
    std::vector<int> labels(static_cast<size_t>(img.width()) * img.height(), 0);
    std::vector<FloodComponent> out;
    int next = 1;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!img.get(x, y) || labels[static_cast<size_t>(y) * img.width() + x] != 0) {
                continue;
            }
            FloodComponent comp;
            comp.bbox = {x, y, 1, 1};
            fill_recursive(img, labels, x, y, next++, comp);
            out.push_back(comp);
        }
    }
    return out;
}

BinaryImage random_binary(std::mt19937& rng, int width, int height, double fg_prob) {
    BinaryImage img(width, height);
    std::bernoulli_distribution coin(fg_prob);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            img.set(x, y, coin(rng));
        }
    }
    return img;
}

}  // namespace oracles
