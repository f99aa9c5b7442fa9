#include "detection/detector.hpp"

#include "imaging/morphology.hpp"

namespace smarttrap::detection {

Detection classify(const imaging::Component& comp, const SizeRange& range) {
    range.validate();
    bool w_in = comp.bbox.w >= range.min_px && comp.bbox.w <= range.max_px;
    bool h_in = comp.bbox.h >= range.min_px && comp.bbox.h <= range.max_px;
    return {comp.bbox, (w_in && h_in) ? Klass::Cbb : Klass::Unknown};
}

DetectionResult detect(const imaging::RgbImage& frame, const DetectParams& params) {
    params.range.validate();
    auto se = imaging::StructuringElement::square(params.se_size);
    auto gray = imaging::to_grayscale(frame);
    auto bin = imaging::binarize(gray, params.threshold);
    auto fg = imaging::invert(bin);
    auto clean = imaging::denoise(fg, se);
    auto comps = imaging::connected_components(clean);

    DetectionResult result;
    result.detections.reserve(comps.size());
    for (const auto& comp : comps) {
        Detection det = classify(comp, params.range);
        (det.klass == Klass::Cbb ? result.cbb_count : result.unknown_count) += 1;
        result.detections.push_back(det);
    }
    return result;
}

namespace {

void draw_box(imaging::RgbImage& img, const imaging::BoundingBox& box, imaging::Rgb color) {
    const int x1 = box.x + box.w - 1;
    const int y1 = box.y + box.h - 1;
    for (int x = box.x; x <= x1; ++x) {
        img.at(x, box.y) = color;
        img.at(x, y1) = color;
    }
    for (int y = box.y; y <= y1; ++y) {
        img.at(box.x, y) = color;
        img.at(x1, y) = color;
    }
}

}  // namespace

imaging::RgbImage annotate(const imaging::RgbImage& frame, const DetectionResult& result) {
    constexpr imaging::Rgb kGreen{0, 255, 0};
    constexpr imaging::Rgb kRed{255, 0, 0};
    imaging::RgbImage out = frame;
    for (const auto& det : result.detections) {
        const auto& b = det.bbox;
        if (b.w < 1 || b.h < 1 || b.x < 0 || b.y < 0 || b.x + b.w > frame.width() ||
            b.y + b.h > frame.height()) {
            throw ValidationError("detection box outside frame bounds");
        }
        draw_box(out, b, det.klass == Klass::Cbb ? kGreen : kRed);
    }
    return out;
}

}  // namespace smarttrap::detection
