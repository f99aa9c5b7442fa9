#include <doctest.h>

#include <random>

#include "detection/detector.hpp"
#include "simkit/scene.hpp"

using namespace smarttrap;
using detection::DetectParams;
using detection::Klass;
using detection::SizeRange;
using imaging::BoundingBox;

namespace {

imaging::Component comp_with_box(int w, int h) {
    return {1, w * h, {0, 0, w, h}};
}

}  // namespace

TEST_CASE("classify applies the inclusive size window to both sides") {
    SizeRange range{10, 60};
    CHECK(detection::classify(comp_with_box(30, 30), range).klass == Klass::Cbb);
    CHECK(detection::classify(comp_with_box(9, 30), range).klass == Klass::Unknown);
    CHECK(detection::classify(comp_with_box(61, 61), range).klass == Klass::Unknown);
    CHECK(detection::classify(comp_with_box(10, 60), range).klass == Klass::Cbb);
    CHECK(detection::classify(comp_with_box(60, 10), range).klass == Klass::Cbb);
    CHECK(detection::classify(comp_with_box(30, 70), range).klass == Klass::Unknown);
}

TEST_CASE("classify matches the predicate over the whole (w,h) square") {
    SizeRange range{10, 60};
    for (int w = 1; w <= 80; ++w) {
        for (int h = 1; h <= 80; ++h) {
            bool expected = w >= 10 && w <= 60 && h >= 10 && h <= 60;
            bool got = detection::classify(comp_with_box(w, h), range).klass == Klass::Cbb;
            CHECK(got == expected);
        }
    }
}

TEST_CASE("classify rejects an inverted range") {
    CHECK_THROWS_AS(detection::classify(comp_with_box(5, 5), SizeRange{10, 5}), ValidationError);
    CHECK_THROWS_AS(detection::classify(comp_with_box(5, 5), SizeRange{0, 5}), ValidationError);
}

TEST_CASE("detect on a blank frame finds nothing") {
    imaging::RgbImage blank(64, 48, {245, 245, 245});
    auto result = detection::detect(blank);
    CHECK(result.cbb_count == 0);
    CHECK(result.unknown_count == 0);
    CHECK(result.detections.empty());
}

TEST_CASE("detect counts the demo scene exactly") {
    auto spec = simkit::parse_scene_text(simkit::demo_scene_text());
    auto scene = simkit::generate_scene(spec);
    auto result = detection::detect(scene.image);
    CHECK(result.cbb_count == 11);
    CHECK(result.unknown_count == 3);
    CHECK(result.cbb_count == scene.truth_cbb);
    CHECK(result.unknown_count == scene.truth_unknown);
}

TEST_CASE("detect is invariant under background brightness shifts") {
    auto spec = simkit::parse_scene_text(simkit::demo_scene_text());
    for (int background : {205, 230, 252}) {
        spec.background = background;
        auto scene = simkit::generate_scene(spec);
        auto result = detection::detect(scene.image);
        CHECK(result.cbb_count == 11);
        CHECK(result.unknown_count == 3);
    }
}

TEST_CASE("detection order follows component label order") {
    simkit::SceneSpec spec;
    spec.width = 200;
    spec.height = 120;
    spec.blobs = {
        {150, 80, 20, 20, 25, simkit::BlobShape::Rect},
        {10, 10, 20, 20, 25, simkit::BlobShape::Rect},
        {80, 40, 20, 20, 25, simkit::BlobShape::Rect},
    };
    auto scene = simkit::generate_scene(spec);
    auto result = detection::detect(scene.image);
    REQUIRE(result.detections.size() == 3);
    // Row-major by first pixel: (10,10), then (80,40), then (150,80).
    CHECK(result.detections[0].bbox.x == 10);
    CHECK(result.detections[1].bbox.x == 80);
    CHECK(result.detections[2].bbox.x == 150);
}

TEST_CASE("annotate with an empty result copies the frame") {
    imaging::RgbImage frame(32, 32, {200, 210, 220});
    auto out = detection::annotate(frame, {});
    CHECK(out == frame);
}

TEST_CASE("annotate recolors exactly the outline runs") {
    imaging::RgbImage frame(64, 64, {255, 255, 255});
    detection::DetectionResult result;
    result.detections.push_back({BoundingBox{5, 5, 20, 20}, Klass::Cbb});
    result.cbb_count = 1;
    auto out = detection::annotate(frame, result);

    int green = 0, untouched = 0, other = 0;
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            auto px = out.at(x, y);
            if (px == imaging::Rgb{0, 255, 0}) {
                ++green;
            } else if (px == frame.at(x, y)) {
                ++untouched;
            } else {
                ++other;
            }
        }
    }
    CHECK(green == 2 * (20 + 20) - 4);
    CHECK(other == 0);
    CHECK(untouched == 64 * 64 - green);
    CHECK(out.width() == frame.width());
    CHECK(out.height() == frame.height());
}

TEST_CASE("annotate draws green for targets and red for unknowns") {
    imaging::RgbImage frame(100, 100, {255, 255, 255});
    detection::DetectionResult result;
    result.detections.push_back({BoundingBox{2, 2, 10, 10}, Klass::Cbb});
    result.detections.push_back({BoundingBox{50, 50, 30, 12}, Klass::Unknown});
    auto out = detection::annotate(frame, result);
    CHECK(out.at(2, 2) == imaging::Rgb{0, 255, 0});
    CHECK(out.at(11, 11) == imaging::Rgb{0, 255, 0});
    CHECK(out.at(50, 50) == imaging::Rgb{255, 0, 0});
    CHECK(out.at(79, 61) == imaging::Rgb{255, 0, 0});
}

TEST_CASE("annotate rejects boxes that leave the frame") {
    imaging::RgbImage frame(32, 32);
    detection::DetectionResult result;
    result.detections.push_back({BoundingBox{30, 30, 5, 5}, Klass::Cbb});
    CHECK_THROWS_AS(detection::annotate(frame, result), ValidationError);
}

TEST_CASE("detect against random generated scenes matches ground truth") {
    std::mt19937 rng(42);
    simkit::RandomSceneParams params;
    params.width = 320;
    params.height = 240;
    params.max_blobs = 8;
    for (int trial = 0; trial < 25; ++trial) {
        auto spec = simkit::random_scene_spec(rng, params);
        auto scene = simkit::generate_scene(spec);
        auto result = detection::detect(scene.image);
        CHECK(result.cbb_count == scene.truth_cbb);
        CHECK(result.unknown_count == scene.truth_unknown);
    }
}
