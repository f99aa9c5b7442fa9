#pragma once

#include <vector>

#include "imaging/components.hpp"
#include "imaging/image.hpp"

namespace smarttrap::detection {

/// Inclusive bounding-box side-length window that separates the target
/// beetle from everything else.
struct SizeRange {
    int min_px = 10;
    int max_px = 60;

    void validate() const {
        if (min_px < 1 || min_px > max_px) {
            throw ValidationError("size range requires 1 <= min <= max");
        }
    }
};

enum class Klass { Cbb, Unknown };

struct Detection {
    imaging::BoundingBox bbox;
    Klass klass = Klass::Unknown;

    bool operator==(const Detection&) const = default;
};

struct DetectionResult {
    std::vector<Detection> detections;
    int cbb_count = 0;
    int unknown_count = 0;
};

struct DetectParams {
    std::uint8_t threshold = imaging::kDefaultThreshold;
    int se_size = 3;
    SizeRange range;
};

/// Cbb iff both bbox sides lie inside [min_px, max_px].
Detection classify(const imaging::Component& comp, const SizeRange& range);

/// Full frame pipeline: grayscale -> threshold -> invert -> denoise ->
/// connected components -> per-component classification. Detection order
/// follows component label order.
DetectionResult detect(const imaging::RgbImage& frame, const DetectParams& params = {});

/// Copy of the frame with 1-px box outlines: green for Cbb, red for Unknown.
/// Throws ValidationError if any box falls outside the frame.
imaging::RgbImage annotate(const imaging::RgbImage& frame, const DetectionResult& result);

}  // namespace smarttrap::detection
