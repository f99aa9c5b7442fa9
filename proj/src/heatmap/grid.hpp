#pragma once

#include <optional>
#include <vector>

#include "common/geo.hpp"
#include "telemetry/message.hpp"

namespace smarttrap::heatmap {

/// Cell sizes emulate Web-Mercator ground resolution at the named zoom
/// level, evaluated at the data's centre latitude.
enum class ZoomPreset { Z13, Z14, Z15, Z16 };

const char* zoom_preset_name(ZoomPreset z);
std::optional<ZoomPreset> zoom_preset_from_name(const std::string& name);
double zoom_cell_size_m(ZoomPreset zoom, double center_lat_deg);

struct RenderConfig {
    double blur_radius_m = 10.0;  // 0 = no spread, each capture lands in one cell
    double opacity = 0.6;         // [0,1]
    ZoomPreset zoom = ZoomPreset::Z15;

    void validate() const;
};

/// Kernel-density accumulation of captured counts over a metric cell grid.
/// Row 0 is the southern edge; cell (0,0) is the south-west corner.
struct HeatGrid {
    GeoBounds bounds;  // grid extent: requested bounds expanded to whole cells
    double cell_size_m = 0.0;
    int cols = 0;
    int rows = 0;
    std::vector<double> raw;        // kernel-weighted count mass per cell
    std::vector<double> intensity;  // raw / max(raw), all zeros when empty
    double kernel_mass = 1.0;       // sum of one un-clipped kernel stencil
    double max_raw = 0.0;

    double& raw_at(int col, int row) { return raw[static_cast<size_t>(row) * cols + col]; }
    double raw_at(int col, int row) const { return raw[static_cast<size_t>(row) * cols + col]; }
    double intensity_at(int col, int row) const {
        return intensity[static_cast<size_t>(row) * cols + col];
    }

    GeoBounds cell_bounds(int col, int row) const;
    size_t nonzero_cells() const;
};

/// Deposits captured_count * Gaussian(sigma = blur/2, truncated at 3 sigma,
/// peak 1 at the centre cell) for every message. With declared bounds the
/// grid covers exactly those bounds (expanded east/north to whole cells) and
/// every message must fall inside them; otherwise bounds are computed from
/// the data and padded so no kernel is clipped.
HeatGrid aggregate(const std::vector<telemetry::CaptureMessage>& messages,
                   const RenderConfig& config,
                   std::optional<GeoBounds> declared_bounds = std::nullopt);

}  // namespace smarttrap::heatmap
