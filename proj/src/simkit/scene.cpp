#include "simkit/scene.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "common/kvfile.hpp"

namespace smarttrap::simkit {

namespace {

constexpr int kMaxDim = 4096;
constexpr int kMaxBlobIntensity = 45;  // keeps bodies at or below the default threshold
constexpr int kMinBackground = 200;
constexpr int kBlobGap = 5;   // empty rows/cols required between blob boxes
constexpr int kSpeckGap = 2;  // keeps specks from clustering past the kernel
constexpr int kHoleMargin = 3;
constexpr int kSpeckIntensity = 20;

bool shape_contains(const BlobSpec& blob, int px, int py) {
    if (!blob.bbox().contains(px, py)) return false;
    if (blob.shape == BlobShape::Rect) return true;
    double nx = (px - blob.center_x()) / (blob.w / 2.0);
    double ny = (py - blob.center_y()) / (blob.h / 2.0);
    return nx * nx + ny * ny <= 1.0;
}

imaging::BoundingBox inflate(const imaging::BoundingBox& b, int margin) {
    return {b.x - margin, b.y - margin, b.w + 2 * margin, b.h + 2 * margin};
}

bool boxes_intersect(const imaging::BoundingBox& a, const imaging::BoundingBox& b) {
    return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

// --- reference pipeline used only to vet specs -------------------------------
// Deliberately naive (direct window scans, scanline fill) and independent of
// the imaging module, so a spec only passes when the scene is unambiguous.

struct Mask {
    int w = 0, h = 0;
    std::vector<std::uint8_t> px;

    Mask(int w_, int h_) : w(w_), h(h_), px(static_cast<size_t>(w_) * h_, 0) {}
    bool get(int x, int y) const {
        return x >= 0 && x < w && y >= 0 && y < h && px[static_cast<size_t>(y) * w + x];
    }
    void set(int x, int y, bool v) { px[static_cast<size_t>(y) * w + x] = v ? 1 : 0; }
};

Mask naive_window(const Mask& in, int radius, bool require_all) {
    Mask out(in.w, in.h);
    for (int y = 0; y < in.h; ++y) {
        for (int x = 0; x < in.w; ++x) {
            bool acc = require_all;
            for (int dy = -radius; dy <= radius && acc == require_all; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    bool v = in.get(x + dx, y + dy);
                    if (require_all && !v) {
                        acc = false;
                        break;
                    }
                    if (!require_all && v) {
                        acc = true;
                        break;
                    }
                }
            }
            out.set(x, y, acc);
        }
    }
    return out;
}

Mask naive_denoise(const Mask& in, int radius) {
    Mask opened = naive_window(naive_window(in, radius, true), radius, false);
    Mask closed = naive_window(naive_window(opened, radius, false), radius, true);
    return closed;
}

std::vector<imaging::BoundingBox> naive_components(const Mask& in) {
    std::vector<imaging::BoundingBox> out;
    Mask seen(in.w, in.h);
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < in.h; ++y) {
        for (int x = 0; x < in.w; ++x) {
            if (!in.get(x, y) || seen.get(x, y)) continue;
            int min_x = x, max_x = x, min_y = y, max_y = y;
            stack.assign(1, {x, y});
            seen.set(x, y, true);
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                min_x = std::min(min_x, cx);
                max_x = std::max(max_x, cx);
                min_y = std::min(min_y, cy);
                max_y = std::max(max_y, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = cx + dx, ny = cy + dy;
                        if (in.get(nx, ny) && !seen.get(nx, ny)) {
                            seen.set(nx, ny, true);
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
            out.push_back({min_x, min_y, max_x - min_x + 1, max_y - min_y + 1});
        }
    }
    return out;
}

Mask rasterize_foreground(const SceneSpec& spec) {
    Mask mask(spec.width, spec.height);
    for (const auto& blob : spec.blobs) {
        for (int y = blob.y; y < blob.y + blob.h; ++y) {
            for (int x = blob.x; x < blob.x + blob.w; ++x) {
                if (shape_contains(blob, x, y)) mask.set(x, y, true);
            }
        }
    }
    for (const auto& speck : spec.specks) {
        for (int y = speck.y; y < speck.y + speck.size; ++y) {
            for (int x = speck.x; x < speck.x + speck.size; ++x) {
                mask.set(x, y, true);
            }
        }
    }
    for (const auto& hole : spec.holes) {
        for (int y = hole.y; y < hole.y + hole.size; ++y) {
            for (int x = hole.x; x < hole.x + hole.size; ++x) {
                mask.set(x, y, false);
            }
        }
    }
    return mask;
}

void check_structural(const SceneSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0 || spec.width > kMaxDim || spec.height > kMaxDim) {
        throw ValidationError("scene dimensions out of range");
    }
    if (spec.background < kMinBackground || spec.background > 255) {
        throw ValidationError("scene background must be in [200, 255]");
    }
    imaging::BoundingBox frame{0, 0, spec.width, spec.height};
    for (size_t i = 0; i < spec.blobs.size(); ++i) {
        const auto& b = spec.blobs[i];
        if (b.w < 1 || b.h < 1 || b.x < 0 || b.y < 0 || b.x + b.w > spec.width ||
            b.y + b.h > spec.height) {
            throw ValidationError("blob " + std::to_string(i) + " outside the frame");
        }
        if (b.intensity < 0 || b.intensity > kMaxBlobIntensity) {
            throw ValidationError("blob " + std::to_string(i) + " intensity must be in [0, 45]");
        }
        if (b.shape == BlobShape::Ellipse && (b.w % 2 == 0 || b.h % 2 == 0)) {
            throw ValidationError("blob " + std::to_string(i) +
                                  ": ellipse sides must be odd so the box stays tight");
        }
        for (size_t j = i + 1; j < spec.blobs.size(); ++j) {
            if (boxes_intersect(inflate(b.bbox(), kBlobGap), spec.blobs[j].bbox())) {
                throw ValidationError("blobs " + std::to_string(i) + " and " + std::to_string(j) +
                                      " closer than the required 5 px gap");
            }
        }
    }
    for (size_t i = 0; i < spec.specks.size(); ++i) {
        const auto& s = spec.specks[i];
        if (s.size < 1 || s.size > 2) throw ValidationError("speck size must be 1 or 2");
        imaging::BoundingBox box{s.x, s.y, s.size, s.size};
        if (!boxes_intersect(frame, box) || s.x < 0 || s.y < 0 || s.x + s.size > spec.width ||
            s.y + s.size > spec.height) {
            throw ValidationError("speck " + std::to_string(i) + " outside the frame");
        }
        for (const auto& b : spec.blobs) {
            if (boxes_intersect(inflate(box, kSpeckGap), b.bbox())) {
                throw ValidationError("speck " + std::to_string(i) + " too close to a blob");
            }
        }
        for (size_t j = i + 1; j < spec.specks.size(); ++j) {
            imaging::BoundingBox other{spec.specks[j].x, spec.specks[j].y, spec.specks[j].size,
                                       spec.specks[j].size};
            if (boxes_intersect(inflate(box, kSpeckGap), other)) {
                throw ValidationError("specks " + std::to_string(i) + " and " + std::to_string(j) +
                                      " too close together");
            }
        }
    }
    for (size_t i = 0; i < spec.holes.size(); ++i) {
        const auto& hole = spec.holes[i];
        if (hole.size < 1 || hole.size > 2) throw ValidationError("hole size must be 1 or 2");
        imaging::BoundingBox box{hole.x, hole.y, hole.size, hole.size};
        imaging::BoundingBox guard = inflate(box, kHoleMargin);
        // The hole plus a kernel-sized margin must sit inside one blob body.
        bool housed = false;
        for (const auto& b : spec.blobs) {
            bool all_inside = true;
            for (int y = guard.y; y < guard.y + guard.h && all_inside; ++y) {
                for (int x = guard.x; x < guard.x + guard.w; ++x) {
                    if (box.contains(x, y)) continue;
                    if (!shape_contains(b, x, y)) {
                        all_inside = false;
                        break;
                    }
                }
            }
            if (all_inside) {
                housed = true;
                break;
            }
        }
        if (!housed) {
            throw ValidationError("hole " + std::to_string(i) +
                                  " must sit at least 3 px inside a blob body");
        }
        for (size_t j = i + 1; j < spec.holes.size(); ++j) {
            imaging::BoundingBox other{spec.holes[j].x, spec.holes[j].y, spec.holes[j].size,
                                       spec.holes[j].size};
            if (boxes_intersect(inflate(box, kHoleMargin), other)) {
                throw ValidationError("holes " + std::to_string(i) + " and " + std::to_string(j) +
                                      " too close together");
            }
        }
    }
}

}  // namespace

void validate_scene(const SceneSpec& spec) {
    check_structural(spec);

    // Reference check: denoising the ideal foreground mask must yield exactly
    // one component per blob with exactly the spec box. Anything else means
    // the spec's ground truth would be ambiguous.
    Mask clean = naive_denoise(rasterize_foreground(spec), 1);
    auto boxes = naive_components(clean);
    if (boxes.size() != spec.blobs.size()) {
        throw ValidationError("scene is not denoise-stable: expected " +
                              std::to_string(spec.blobs.size()) + " bodies, reference pass found " +
                              std::to_string(boxes.size()));
    }
    std::vector<imaging::BoundingBox> expected;
    expected.reserve(spec.blobs.size());
    for (const auto& b : spec.blobs) expected.push_back(b.bbox());
    auto key = [](const imaging::BoundingBox& b) { return std::tuple(b.y, b.x, b.w, b.h); };
    std::sort(expected.begin(), expected.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::sort(boxes.begin(), boxes.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    for (size_t i = 0; i < boxes.size(); ++i) {
        if (!(boxes[i] == expected[i])) {
            throw ValidationError("scene is not denoise-stable: blob box drifted");
        }
    }
}

Scene generate_scene(const SceneSpec& spec, const detection::SizeRange& range) {
    range.validate();
    validate_scene(spec);

    std::mt19937 rng(spec.seed);
    auto jitter = [&rng](int base, int amplitude, int lo, int hi) {
        int v = base + static_cast<int>(rng() % (2 * amplitude + 1)) - amplitude;
        return static_cast<std::uint8_t>(std::clamp(v, lo, hi));
    };

    imaging::RgbImage img(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            std::uint8_t v = jitter(spec.background, 5, kMinBackground, 255);
            img.at(x, y) = {v, v, v};
        }
    }
    for (const auto& blob : spec.blobs) {
        for (int y = blob.y; y < blob.y + blob.h; ++y) {
            for (int x = blob.x; x < blob.x + blob.w; ++x) {
                if (!shape_contains(blob, x, y)) continue;
                std::uint8_t v = jitter(blob.intensity, 3, 0, kMaxBlobIntensity);
                img.at(x, y) = {v, v, v};
            }
        }
    }
    for (const auto& speck : spec.specks) {
        for (int y = speck.y; y < speck.y + speck.size; ++y) {
            for (int x = speck.x; x < speck.x + speck.size; ++x) {
                std::uint8_t v = jitter(kSpeckIntensity, 3, 0, kMaxBlobIntensity);
                img.at(x, y) = {v, v, v};
            }
        }
    }
    for (const auto& hole : spec.holes) {
        for (int y = hole.y; y < hole.y + hole.size; ++y) {
            for (int x = hole.x; x < hole.x + hole.size; ++x) {
                std::uint8_t v = jitter(spec.background, 5, kMinBackground, 255);
                img.at(x, y) = {v, v, v};
            }
        }
    }

    Scene scene{std::move(img), 0, 0};
    for (const auto& blob : spec.blobs) {
        bool in_range = blob.w >= range.min_px && blob.w <= range.max_px &&
                        blob.h >= range.min_px && blob.h <= range.max_px;
        (in_range ? scene.truth_cbb : scene.truth_unknown) += 1;
    }
    return scene;
}

SceneSpec parse_scene_text(const std::string& text) {
    KvFile kv = parse_kv_text(text, "scene");
    SceneSpec spec;
    spec.width = static_cast<int>(kv.get_long("width", spec.width));
    spec.height = static_cast<int>(kv.get_long("height", spec.height));
    spec.background = static_cast<int>(kv.get_long("background", spec.background));
    spec.seed = static_cast<unsigned>(kv.get_long("seed", 0));
    for (const auto& rec : kv.records) {
        if (rec.key == "blob") {
            if (rec.values.size() != 6) {
                throw ParseError("blob expects: x y w h intensity rect|ellipse (line " +
                                 std::to_string(rec.line) + ")");
            }
            BlobSpec b;
            b.x = static_cast<int>(kv_to_long(rec, 0));
            b.y = static_cast<int>(kv_to_long(rec, 1));
            b.w = static_cast<int>(kv_to_long(rec, 2));
            b.h = static_cast<int>(kv_to_long(rec, 3));
            b.intensity = static_cast<int>(kv_to_long(rec, 4));
            if (rec.values[5] == "rect") {
                b.shape = BlobShape::Rect;
            } else if (rec.values[5] == "ellipse") {
                b.shape = BlobShape::Ellipse;
            } else {
                throw ParseError("blob shape must be rect or ellipse (line " +
                                 std::to_string(rec.line) + ")");
            }
            spec.blobs.push_back(b);
        } else if (rec.key == "speck") {
            if (rec.values.size() != 3) {
                throw ParseError("speck expects: x y size (line " + std::to_string(rec.line) + ")");
            }
            spec.specks.push_back({static_cast<int>(kv_to_long(rec, 0)),
                                   static_cast<int>(kv_to_long(rec, 1)),
                                   static_cast<int>(kv_to_long(rec, 2))});
        } else if (rec.key == "hole") {
            if (rec.values.size() != 3) {
                throw ParseError("hole expects: x y size (line " + std::to_string(rec.line) + ")");
            }
            spec.holes.push_back({static_cast<int>(kv_to_long(rec, 0)),
                                  static_cast<int>(kv_to_long(rec, 1)),
                                  static_cast<int>(kv_to_long(rec, 2))});
        }
    }
    return spec;
}

SceneSpec parse_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scene_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string demo_scene_text() {
    return R"(smarttrap-scene v1
# 640x480 frame with 11 in-range bodies and 3 out-of-range ones
width 640
height 480
background 230
seed 20200301
# blob <x> <y> <w> <h> <intensity> <rect|ellipse>
blob 60 60 18 24 25 rect
blob 160 55 25 25 30 ellipse
blob 260 60 40 18 22 rect
blob 380 50 55 35 35 rect
blob 500 60 15 15 28 ellipse
blob 70 170 33 41 26 ellipse
blob 180 160 12 50 24 rect
blob 300 165 28 22 32 rect
blob 420 160 45 45 30 ellipse
blob 540 170 20 30 27 rect
blob 80 290 50 24 29 rect
blob 200 280 75 70 33 rect
blob 340 290 85 81 31 ellipse
blob 520 300 90 35 25 rect
speck 30 430 1
speck 610 20 1
speck 320 440 2
hole 400 60 1
hole 230 310 2
)";
}

namespace {

SceneSpec random_scene_spec_once(std::mt19937& rng, const RandomSceneParams& params) {
    auto rand_int = [&rng](int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };

    SceneSpec spec;
    spec.width = params.width;
    spec.height = params.height;
    spec.background = rand_int(210, 245);
    spec.seed = rng();

    const int blob_count = rand_int(params.min_blobs, params.max_blobs);
    for (int i = 0; i < blob_count; ++i) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            BlobSpec b;
            bool in_range = rand_int(0, 99) < 70;
            auto pick_side = [&](bool inside) {
                if (inside) return rand_int(params.range.min_px, params.range.max_px);
                bool small = rand_int(0, 1) == 0 && params.min_side < params.range.min_px;
                return small ? rand_int(params.min_side, params.range.min_px - 1)
                             : rand_int(params.range.max_px + 1, params.max_side);
            };
            if (in_range) {
                b.w = pick_side(true);
                b.h = pick_side(true);
            } else {
                // At least one side out of range; the other side may be anything.
                b.w = pick_side(false);
                b.h = rand_int(0, 1) ? pick_side(false)
                                     : rand_int(params.range.min_px, params.range.max_px);
                if (rand_int(0, 1)) std::swap(b.w, b.h);
            }
            // Ellipses only where the discrete shape provably survives the
            // kernel: roughly round, odd-sided, not too small.
            bool roundish = std::max(b.w, b.h) <= 2 * std::min(b.w, b.h);
            if (roundish && b.w >= 7 && b.h >= 7 && rand_int(0, 1) == 1) {
                b.w |= 1;
                b.h |= 1;
                b.shape = BlobShape::Ellipse;
            } else {
                b.w = std::max(b.w, 3);
                b.h = std::max(b.h, 3);
                b.shape = BlobShape::Rect;
            }
            if (b.w > spec.width - 2 || b.h > spec.height - 2) continue;
            b.x = rand_int(1, spec.width - b.w - 1);
            b.y = rand_int(1, spec.height - b.h - 1);
            b.intensity = rand_int(10, kMaxBlobIntensity - 3);

            bool clear = true;
            for (const auto& other : spec.blobs) {
                if (boxes_intersect(inflate(b.bbox(), kBlobGap), other.bbox())) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            spec.blobs.push_back(b);
            break;
        }
    }

    const int speck_count = rand_int(0, params.max_specks);
    for (int i = 0; i < speck_count; ++i) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            SpeckSpec s{rand_int(0, spec.width - 2), rand_int(0, spec.height - 2), rand_int(1, 2)};
            imaging::BoundingBox box{s.x, s.y, s.size, s.size};
            bool clear = true;
            for (const auto& b : spec.blobs) {
                if (boxes_intersect(inflate(box, kSpeckGap), b.bbox())) {
                    clear = false;
                    break;
                }
            }
            for (const auto& other : spec.specks) {
                imaging::BoundingBox obox{other.x, other.y, other.size, other.size};
                if (boxes_intersect(inflate(box, kSpeckGap), obox)) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            spec.specks.push_back(s);
            break;
        }
    }

    const int hole_count = rand_int(0, params.max_holes);
    for (int i = 0; i < hole_count; ++i) {
        // Only rectangular bodies with enough interior get holes.
        std::vector<const BlobSpec*> hosts;
        for (const auto& b : spec.blobs) {
            if (b.shape == BlobShape::Rect && b.w >= 2 * kHoleMargin + 4 &&
                b.h >= 2 * kHoleMargin + 4) {
                hosts.push_back(&b);
            }
        }
        if (hosts.empty()) break;
        for (int attempt = 0; attempt < 100; ++attempt) {
            const BlobSpec* host = hosts[static_cast<size_t>(rand_int(0, static_cast<int>(hosts.size()) - 1))];
            int size = rand_int(1, 2);
            HoleSpec hole{rand_int(host->x + kHoleMargin, host->x + host->w - kHoleMargin - size),
                          rand_int(host->y + kHoleMargin, host->y + host->h - kHoleMargin - size),
                          size};
            imaging::BoundingBox box{hole.x, hole.y, hole.size, hole.size};
            bool clear = true;
            for (const auto& other : spec.holes) {
                imaging::BoundingBox obox{other.x, other.y, other.size, other.size};
                if (boxes_intersect(inflate(box, kHoleMargin), obox)) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            spec.holes.push_back(hole);
            break;
        }
    }
    return spec;
}

}  // namespace

SceneSpec random_scene_spec(std::mt19937& rng, const RandomSceneParams& params) {
    params.range.validate();
    // Placement constraints make rejected draws rare; redraw rather than fail.
    for (int attempt = 0; attempt < 16; ++attempt) {
        SceneSpec spec = random_scene_spec_once(rng, params);
        try {
            validate_scene(spec);
            return spec;
        } catch (const ValidationError&) {
            continue;
        }
    }
    throw ValidationError("could not draw a valid random scene");
}

}  // namespace smarttrap::simkit
