#pragma once

#include <random>
#include <string>
#include <vector>

#include "detection/detector.hpp"
#include "imaging/image.hpp"

namespace smarttrap::simkit {

enum class BlobShape { Rect, Ellipse };

/// One synthetic insect body. (x, y) is the top-left of its tight bounding
/// box; the rendered shape is guaranteed to fill that box tightly.
struct BlobSpec {
    int x = 0;
    int y = 0;
    int w = 1;
    int h = 1;
    int intensity = 25;  // gray level, must stay at or below the threshold
    BlobShape shape = BlobShape::Rect;

    imaging::BoundingBox bbox() const { return {x, y, w, h}; }
    double center_x() const { return x + (w - 1) / 2.0; }
    double center_y() const { return y + (h - 1) / 2.0; }
};

/// Dark square dropped on the background; must vanish under denoising.
struct SpeckSpec {
    int x = 0;
    int y = 0;
    int size = 1;  // 1 or 2
};

/// Light square punched into a blob interior; must be filled by denoising.
struct HoleSpec {
    int x = 0;
    int y = 0;
    int size = 1;  // 1 or 2
};

struct SceneSpec {
    int width = 640;
    int height = 480;
    int background = 230;  // >= 200
    unsigned seed = 0;     // drives per-pixel intensity jitter
    std::vector<BlobSpec> blobs;
    std::vector<SpeckSpec> specks;
    std::vector<HoleSpec> holes;
};

struct Scene {
    imaging::RgbImage image;
    int truth_cbb = 0;      // blobs whose spec box is inside the size range
    int truth_unknown = 0;  // all other blobs
};

/// Structural validation plus a reference-pipeline stability check: the
/// rendered scene, pushed through a naive threshold/denoise/label pass,
/// must reproduce exactly the spec's blob boxes. Throws ValidationError
/// with the first violated rule.
void validate_scene(const SceneSpec& spec);

/// Renders the scene and computes ground truth from the spec dimensions
/// (never from the image). Validates first.
Scene generate_scene(const SceneSpec& spec, const detection::SizeRange& range = {});

SceneSpec parse_scene_text(const std::string& text);
SceneSpec parse_scene_file(const std::string& path);

/// The bundled demonstration scene: 11 in-range bodies and 3 out-of-range
/// ones on a 640x480 frame, with a few noise pixels.
std::string demo_scene_text();

struct RandomSceneParams {
    int width = 640;
    int height = 480;
    int min_blobs = 3;
    int max_blobs = 14;
    int min_side = 5;   // smallest blob side drawn
    int max_side = 90;  // largest blob side drawn
    int max_specks = 3;
    int max_holes = 2;
    detection::SizeRange range;
};

/// Draws a random valid scene spec. All placement is rejection-sampled so
/// the result always passes validate_scene; deterministic for a given rng
/// state.
SceneSpec random_scene_spec(std::mt19937& rng, const RandomSceneParams& params = {});

}  // namespace smarttrap::simkit
