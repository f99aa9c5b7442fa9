#include <doctest.h>

#include <random>

#include "imaging/components.hpp"
#include "imaging/image.hpp"
#include "imaging/morphology.hpp"
#include "oracles.hpp"

using namespace smarttrap;
using imaging::BinaryImage;
using imaging::GrayImage;
using imaging::RgbImage;
using imaging::StructuringElement;

namespace {

BinaryImage checkerboard(int w, int h) {
    BinaryImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.set(x, y, (x + y) % 2 == 0);
        }
    }
    return img;
}

}  // namespace

TEST_CASE("to_grayscale uses rounded 601 luma") {
    RgbImage img(3, 1);
    img.at(0, 0) = {255, 255, 255};
    img.at(1, 0) = {0, 0, 0};
    img.at(2, 0) = {255, 100, 50};  // 0.299*255 + 0.587*100 + 0.114*50 = 140.645
    GrayImage gray = imaging::to_grayscale(img);
    CHECK(gray.at(0, 0) == 255);
    CHECK(gray.at(1, 0) == 0);
    CHECK(gray.at(2, 0) == 141);
}

TEST_CASE("to_grayscale leaves pure gray pixels unchanged") {
    RgbImage img(256, 1);
    for (int v = 0; v < 256; ++v) {
        auto c = static_cast<std::uint8_t>(v);
        img.at(v, 0) = {c, c, c};
    }
    GrayImage gray = imaging::to_grayscale(img);
    for (int v = 0; v < 256; ++v) {
        CHECK(gray.at(v, 0) == v);
    }
}

TEST_CASE("binarize maps lighter-than-threshold to white, threshold itself to black") {
    GrayImage img(3, 1);
    img.at(0, 0) = 200;
    img.at(1, 0) = 45;
    img.at(2, 0) = 0;
    BinaryImage bin = imaging::binarize(img, 45);
    CHECK(bin.get(0, 0));        // lighter -> white
    CHECK_FALSE(bin.get(1, 0));  // equal -> black
    CHECK_FALSE(bin.get(2, 0));
}

TEST_CASE("invert flips everything and is an involution") {
    auto board = checkerboard(8, 6);
    auto flipped = imaging::invert(board);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 8; ++x) {
            CHECK(flipped.get(x, y) == !board.get(x, y));
        }
    }
    CHECK(imaging::invert(flipped) == board);

    BinaryImage all_white(4, 4, true);
    CHECK(imaging::invert(all_white) == BinaryImage(4, 4, false));
}

TEST_CASE("structuring element rejects even and non-positive sizes") {
    CHECK_THROWS_AS(StructuringElement::square(2), ValidationError);
    CHECK_THROWS_AS(StructuringElement::square(0), ValidationError);
    CHECK_THROWS_AS(StructuringElement::square(-3), ValidationError);
    CHECK(StructuringElement::square(1).radius() == 0);
    CHECK(StructuringElement::square(5).radius() == 2);
}

TEST_CASE("erode shrinks an all-foreground image by the boundary rule") {
    BinaryImage img(10, 10, true);
    auto se = StructuringElement::square(3);
    BinaryImage out = imaging::erode(img, se);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            bool interior = x >= 1 && x <= 8 && y >= 1 && y <= 8;
            CHECK(out.get(x, y) == interior);
        }
    }
}

TEST_CASE("erode removes a lone pixel; dilate grows it to the kernel footprint") {
    BinaryImage img(7, 7);
    img.set(3, 3, true);
    auto se = StructuringElement::square(3);
    CHECK(imaging::erode(img, se).foreground_count() == 0);

    BinaryImage grown = imaging::dilate(img, se);
    CHECK(grown.foreground_count() == 9);
    for (int y = 2; y <= 4; ++y) {
        for (int x = 2; x <= 4; ++x) {
            CHECK(grown.get(x, y));
        }
    }
}

TEST_CASE("dilate keeps an all-background image empty") {
    BinaryImage img(9, 5);
    CHECK(imaging::dilate(img, StructuringElement::square(3)).foreground_count() == 0);
}

TEST_CASE("erode and dilate match the naive window oracle on random images") {
    std::mt19937 rng(1234);
    auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 50; ++trial) {
        BinaryImage img = oracles::random_binary(rng, 12, 12);
        CHECK(imaging::erode(img, se) == oracles::window_min(img, 1));
        CHECK(imaging::dilate(img, se) == oracles::window_max(img, 1));
    }
    auto se5 = StructuringElement::square(5);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryImage img = oracles::random_binary(rng, 12, 12);
        CHECK(imaging::erode(img, se5) == oracles::window_min(img, 2));
        CHECK(imaging::dilate(img, se5) == oracles::window_max(img, 2));
    }
}

TEST_CASE("open removes a 1-px speck, close fills a 1-px hole") {
    auto se = StructuringElement::square(3);

    BinaryImage speck(12, 12);
    speck.set(6, 6, true);
    CHECK(imaging::open(speck, se).foreground_count() == 0);

    BinaryImage block(13, 13);
    for (int y = 2; y <= 10; ++y) {
        for (int x = 2; x <= 10; ++x) {
            block.set(x, y, true);
        }
    }
    BinaryImage holed = block;
    holed.set(6, 6, false);
    CHECK(imaging::close(holed, se) == block);
}

TEST_CASE("open and close are idempotent, anti-extensive / extensive, monotone") {
    std::mt19937 rng(99);
    auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 30; ++trial) {
        BinaryImage img = oracles::random_binary(rng, 16, 16);

        BinaryImage opened = imaging::open(img, se);
        BinaryImage closed = imaging::close(img, se);
        CHECK(imaging::open(opened, se) == opened);
        CHECK(imaging::close(closed, se) == closed);

        BinaryImage eroded = imaging::erode(img, se);
        BinaryImage dilated = imaging::dilate(img, se);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                if (eroded.get(x, y)) CHECK(img.get(x, y));   // erosion anti-extensive
                if (img.get(x, y)) CHECK(dilated.get(x, y));  // dilation extensive
                if (opened.get(x, y)) CHECK(img.get(x, y));
                if (img.get(x, y)) CHECK(closed.get(x, y));
            }
        }

        // Monotonicity: adding foreground never removes output foreground.
        BinaryImage bigger = img;
        std::uniform_int_distribution<int> coord(0, 15);
        for (int i = 0; i < 10; ++i) bigger.set(coord(rng), coord(rng), true);
        BinaryImage eroded_big = imaging::erode(bigger, se);
        BinaryImage dilated_big = imaging::dilate(bigger, se);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                if (eroded.get(x, y)) CHECK(eroded_big.get(x, y));
                if (dilated.get(x, y)) CHECK(dilated_big.get(x, y));
            }
        }
    }
}

TEST_CASE("open/close duality holds away from the border") {
    std::mt19937 rng(7);
    auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 30; ++trial) {
        BinaryImage img = oracles::random_binary(rng, 14, 14);
        BinaryImage lhs = imaging::open(img, se);
        BinaryImage rhs = imaging::invert(imaging::close(imaging::invert(img), se));
        // The background boundary convention breaks exact duality on the
        // outer two rings (kernel reach of open/close is 2).
        for (int y = 2; y < 12; ++y) {
            for (int x = 2; x < 12; ++x) {
                CHECK(lhs.get(x, y) == rhs.get(x, y));
            }
        }
    }
}

TEST_CASE("denoise keeps a clean blob unchanged and strips speck plus hole") {
    auto se = StructuringElement::square(3);
    BinaryImage clean(20, 20);
    for (int y = 4; y <= 14; ++y) {
        for (int x = 5; x <= 13; ++x) {
            clean.set(x, y, true);
        }
    }
    CHECK(imaging::denoise(clean, se) == clean);

    BinaryImage noisy = clean;
    noisy.set(18, 18, true);  // speck far from the blob
    noisy.set(9, 9, false);   // hole deep inside
    CHECK(imaging::denoise(noisy, se) == clean);
}

TEST_CASE("connected_components finds disjoint blobs with tight boxes") {
    BinaryImage img(20, 10);
    // three blobs: 2x2, 1x1, 3x1
    img.set(1, 1, true);
    img.set(2, 1, true);
    img.set(1, 2, true);
    img.set(2, 2, true);
    img.set(10, 5, true);
    img.set(15, 8, true);
    img.set(16, 8, true);
    img.set(17, 8, true);

    auto comps = imaging::connected_components(img);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].bbox == imaging::BoundingBox{1, 1, 2, 2});
    CHECK(comps[0].pixel_count == 4);
    CHECK(comps[1].bbox == imaging::BoundingBox{10, 5, 1, 1});
    CHECK(comps[2].bbox == imaging::BoundingBox{15, 8, 3, 1});
    CHECK(comps[0].label == 1);
    CHECK(comps[1].label == 2);
    CHECK(comps[2].label == 3);
}

TEST_CASE("diagonal neighbours join under 8-connectivity") {
    BinaryImage img(4, 4);
    img.set(0, 0, true);
    img.set(1, 1, true);
    auto comps = imaging::connected_components(img);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].pixel_count == 2);
    CHECK(comps[0].bbox == imaging::BoundingBox{0, 0, 2, 2});
}

TEST_CASE("connected_components agrees with the recursive flood-fill oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        BinaryImage img = oracles::random_binary(rng, 20, 20, 0.35);
        auto got = imaging::connected_components(img);
        auto want = oracles::flood_components(img);
        REQUIRE(got.size() == want.size());
        size_t total_px = 0;
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].bbox == want[i].bbox);
            CHECK(got[i].pixel_count == want[i].pixel_count);
            total_px += static_cast<size_t>(got[i].pixel_count);
        }
        CHECK(total_px == img.foreground_count());  // components partition foreground
    }
}

TEST_CASE("pipeline stages are deterministic") {
    std::mt19937 rng(5);
    BinaryImage img = oracles::random_binary(rng, 30, 30);
    auto se = StructuringElement::square(3);
    CHECK(imaging::denoise(img, se) == imaging::denoise(img, se));
    CHECK(imaging::erode(img, se) == imaging::erode(img, se));
}
