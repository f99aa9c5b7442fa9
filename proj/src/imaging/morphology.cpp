#include "imaging/morphology.hpp"

namespace smarttrap::imaging {

namespace {

enum class Mode { Min, Max };

// Square kernels are separable: one horizontal pass, one vertical pass.
// Out-of-bounds counts as background in both passes, which matches the
// 2-D window rule exactly.
BinaryImage box_filter(const BinaryImage& img, int radius, Mode mode) {
    const int w = img.width();
    const int h = img.height();
    const bool fg_wins = (mode == Mode::Max);

    BinaryImage horiz(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool acc = !fg_wins;
            for (int dx = -radius; dx <= radius; ++dx) {
                bool v = img.get_clamped(x + dx, y);
                acc = fg_wins ? (acc || v) : (acc && v);
                if (acc == fg_wins) break;
            }
            horiz.set(x, y, acc);
        }
    }

    BinaryImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool acc = !fg_wins;
            for (int dy = -radius; dy <= radius; ++dy) {
                int yy = y + dy;
                bool v = yy >= 0 && yy < h && horiz.get(x, yy);
                acc = fg_wins ? (acc || v) : (acc && v);
                if (acc == fg_wins) break;
            }
            out.set(x, y, acc);
        }
    }
    return out;
}

}  // namespace

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    return box_filter(img, se.radius(), Mode::Min);
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    return box_filter(img, se.radius(), Mode::Max);
}

BinaryImage open(const BinaryImage& img, const StructuringElement& se) {
    return dilate(erode(img, se), se);
}

BinaryImage close(const BinaryImage& img, const StructuringElement& se) {
    return erode(dilate(img, se), se);
}

BinaryImage denoise(const BinaryImage& img, const StructuringElement& se) {
    return close(open(img, se), se);
}

}  // namespace smarttrap::imaging
