#include "heatmap/grid.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace smarttrap::heatmap {

const char* zoom_preset_name(ZoomPreset z) {
    switch (z) {
        case ZoomPreset::Z13: return "z13";
        case ZoomPreset::Z14: return "z14";
        case ZoomPreset::Z15: return "z15";
        case ZoomPreset::Z16: return "z16";
    }
    return "?";
}

std::optional<ZoomPreset> zoom_preset_from_name(const std::string& name) {
    if (name == "z13") return ZoomPreset::Z13;
    if (name == "z14") return ZoomPreset::Z14;
    if (name == "z15") return ZoomPreset::Z15;
    if (name == "z16") return ZoomPreset::Z16;
    return std::nullopt;
}

double zoom_cell_size_m(ZoomPreset zoom, double center_lat_deg) {
    int level = 13;
    switch (zoom) {
        case ZoomPreset::Z13: level = 13; break;
        case ZoomPreset::Z14: level = 14; break;
        case ZoomPreset::Z15: level = 15; break;
        case ZoomPreset::Z16: level = 16; break;
    }
    // Standard Web-Mercator ground resolution (meters per pixel).
    constexpr double kEquatorResolution = 156543.03392;
    return kEquatorResolution * std::cos(center_lat_deg * 3.14159265358979323846 / 180.0) /
           std::pow(2.0, level);
}

void RenderConfig::validate() const {
    if (blur_radius_m < 0) throw ValidationError("blur radius must be >= 0");
    if (opacity < 0 || opacity > 1) throw ValidationError("opacity must be in [0, 1]");
}

GeoBounds HeatGrid::cell_bounds(int col, int row) const {
    const LocalScale scale = local_scale(bounds.center_lat());
    const double dlon = cell_size_m / scale.meters_per_deg_lon;
    const double dlat = cell_size_m / scale.meters_per_deg_lat;
    return {bounds.min_lon + col * dlon, bounds.min_lat + row * dlat,
            bounds.min_lon + (col + 1) * dlon, bounds.min_lat + (row + 1) * dlat};
}

size_t HeatGrid::nonzero_cells() const {
    size_t n = 0;
    for (double v : raw) {
        if (v > 0.0) ++n;
    }
    return n;
}

HeatGrid aggregate(const std::vector<telemetry::CaptureMessage>& messages,
                   const RenderConfig& config, std::optional<GeoBounds> declared_bounds) {
    config.validate();
    if (declared_bounds && !geobounds_valid(*declared_bounds)) {
        throw ValidationError("declared heatmap bounds are invalid");
    }

    HeatGrid grid;

    GeoBounds data{};
    if (declared_bounds) {
        data = *declared_bounds;
        for (const auto& msg : messages) {
            if (!data.contains({msg.latitude, msg.longitude})) {
                throw ValidationError("capture at (" + std::to_string(msg.latitude) + ", " +
                                      std::to_string(msg.longitude) +
                                      ") outside the declared bounds");
            }
        }
    } else if (!messages.empty()) {
        data = {messages[0].longitude, messages[0].latitude, messages[0].longitude,
                messages[0].latitude};
        for (const auto& msg : messages) {
            data.min_lon = std::min(data.min_lon, msg.longitude);
            data.max_lon = std::max(data.max_lon, msg.longitude);
            data.min_lat = std::min(data.min_lat, msg.latitude);
            data.max_lat = std::max(data.max_lat, msg.latitude);
        }
    } else {
        data = {0.0, 0.0, 0.0, 0.0};
    }

    const double center_lat = 0.5 * (data.min_lat + data.max_lat);
    const LocalScale scale = local_scale(center_lat);
    grid.cell_size_m = zoom_cell_size_m(config.zoom, center_lat);

    const double sigma = config.blur_radius_m / 2.0;
    const double reach = 3.0 * sigma;

    double pad = declared_bounds ? 0.0 : reach + grid.cell_size_m;
    const double west = data.min_lon - pad / scale.meters_per_deg_lon;
    const double south = data.min_lat - pad / scale.meters_per_deg_lat;
    const double width_m =
        (data.max_lon - data.min_lon) * scale.meters_per_deg_lon + 2 * pad;
    const double height_m =
        (data.max_lat - data.min_lat) * scale.meters_per_deg_lat + 2 * pad;

    grid.cols = std::max(1, static_cast<int>(std::ceil(width_m / grid.cell_size_m - 1e-9)));
    grid.rows = std::max(1, static_cast<int>(std::ceil(height_m / grid.cell_size_m - 1e-9)));
    grid.bounds = {west, south, west + grid.cols * grid.cell_size_m / scale.meters_per_deg_lon,
                   south + grid.rows * grid.cell_size_m / scale.meters_per_deg_lat};
    grid.raw.assign(static_cast<size_t>(grid.cols) * grid.rows, 0.0);
    grid.intensity.assign(grid.raw.size(), 0.0);

    // Kernel stencil in whole-cell offsets, identical for every message.
    const int stencil_r =
        sigma > 0 ? static_cast<int>(std::floor(reach / grid.cell_size_m)) : 0;
    std::vector<std::pair<std::pair<int, int>, double>> stencil;
    grid.kernel_mass = 0.0;
    for (int dy = -stencil_r; dy <= stencil_r; ++dy) {
        for (int dx = -stencil_r; dx <= stencil_r; ++dx) {
            double w = 1.0;
            if (sigma > 0) {
                double dist = grid.cell_size_m * std::hypot(dx, dy);
                if (dist > reach) continue;
                w = std::exp(-(dist * dist) / (2 * sigma * sigma));
            }
            stencil.push_back({{dx, dy}, w});
            grid.kernel_mass += w;
        }
    }

    for (const auto& msg : messages) {
        double x = (msg.longitude - grid.bounds.min_lon) * scale.meters_per_deg_lon;
        double y = (msg.latitude - grid.bounds.min_lat) * scale.meters_per_deg_lat;
        int col = std::clamp(static_cast<int>(std::floor(x / grid.cell_size_m)), 0,
                             grid.cols - 1);
        int row = std::clamp(static_cast<int>(std::floor(y / grid.cell_size_m)), 0,
                             grid.rows - 1);
        for (const auto& [offset, w] : stencil) {
            int c = col + offset.first;
            int r = row + offset.second;
            if (c < 0 || c >= grid.cols || r < 0 || r >= grid.rows) continue;
            grid.raw_at(c, r) += msg.captured_count * w;
        }
    }

    grid.max_raw = 0.0;
    for (double v : grid.raw) grid.max_raw = std::max(grid.max_raw, v);
    if (grid.max_raw > 0.0) {
        for (size_t i = 0; i < grid.raw.size(); ++i) {
            grid.intensity[i] = grid.raw[i] / grid.max_raw;
        }
    }
    return grid;
}

}  // namespace smarttrap::heatmap
