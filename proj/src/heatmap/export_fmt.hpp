#pragma once

#include <string>

#include "heatmap/grid.hpp"
#include "heatmap/render.hpp"

namespace smarttrap::heatmap {

/// RFC 7946 FeatureCollection: one Polygon per nonzero cell (closed 5-point
/// counter-clockwise ring, lon/lat order) with raw and intensity properties.
std::string export_geojson(const HeatGrid& grid);

/// Self-contained page: the rendered raster inlined as a base64 data URI
/// over a plain coordinate frame with axis labels and the ramp legend. No
/// external fetches.
std::string export_html(const HeatGrid& grid, const RenderConfig& config,
                        const RgbaImage& raster);

}  // namespace smarttrap::heatmap
