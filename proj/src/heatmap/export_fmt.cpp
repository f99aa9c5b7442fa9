#include "heatmap/export_fmt.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

namespace smarttrap::heatmap {

using nlohmann::json;

std::string export_geojson(const HeatGrid& grid) {
    json features = json::array();
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.cols; ++col) {
            double raw = grid.raw_at(col, row);
            if (raw <= 0.0) continue;
            GeoBounds cb = grid.cell_bounds(col, row);
            // Exterior ring counter-clockwise per RFC 7946.
            json ring = json::array({
                json::array({cb.min_lon, cb.min_lat}),
                json::array({cb.max_lon, cb.min_lat}),
                json::array({cb.max_lon, cb.max_lat}),
                json::array({cb.min_lon, cb.max_lat}),
                json::array({cb.min_lon, cb.min_lat}),
            });
            features.push_back(json{
                {"type", "Feature"},
                {"geometry",
                 {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
                {"properties",
                 {{"raw", raw},
                  {"intensity", grid.intensity_at(col, row)},
                  {"col", col},
                  {"row", row}}},
            });
        }
    }
    json doc{
        {"type", "FeatureCollection"},
        {"bbox", json::array({grid.bounds.min_lon, grid.bounds.min_lat, grid.bounds.max_lon,
                              grid.bounds.max_lat})},
        {"features", features},
    };
    return doc.dump();
}

namespace {

std::string base64_encode(const std::string& bytes) {
    static const char* alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 2 < bytes.size()) {
        std::uint32_t v = (static_cast<std::uint8_t>(bytes[i]) << 16) |
                          (static_cast<std::uint8_t>(bytes[i + 1]) << 8) |
                          static_cast<std::uint8_t>(bytes[i + 2]);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
        i += 3;
    }
    if (i + 1 == bytes.size()) {
        std::uint32_t v = static_cast<std::uint8_t>(bytes[i]) << 16;
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (i + 2 == bytes.size()) {
        std::uint32_t v = (static_cast<std::uint8_t>(bytes[i]) << 16) |
                          (static_cast<std::uint8_t>(bytes[i + 1]) << 8);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::string fmt_deg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

}  // namespace

std::string export_html(const HeatGrid& grid, const RenderConfig& config,
                        const RgbaImage& raster) {
    const std::string png_b64 = base64_encode(encode_png(raster));
    const int display_w = 640;
    const int display_h =
        grid.cols > 0 ? std::max(1, display_w * grid.rows / std::max(1, grid.cols)) : display_w;

    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
         << "<title>Capture density (" << zoom_preset_name(config.zoom) << ")</title>\n"
         << "<style>\n"
            "body{font-family:sans-serif;margin:24px;background:#fafafa;color:#222}\n"
            ".map{position:relative;border:1px solid #888;background:"
            "repeating-linear-gradient(0deg,#eee 0,#eee 1px,#fff 1px,#fff 40px),"
            "repeating-linear-gradient(90deg,#eee 0,#eee 1px,#fff 1px,#fff 40px)}\n"
            ".map img{position:absolute;inset:0;width:100%;height:100%;"
            "image-rendering:pixelated}\n"
            ".axis{font-size:11px;color:#555}\n"
            ".legend{margin-top:12px}\n"
            ".legend span{display:inline-block;width:90px;font-size:12px}\n"
            ".swatch{display:inline-block;width:18px;height:12px;border:1px solid #999;"
            "vertical-align:middle;margin-right:4px}\n"
            "table.meta{font-size:12px;margin-top:8px;border-collapse:collapse}\n"
            "table.meta td{padding:2px 8px;border:1px solid #ddd}\n"
            "</style>\n</head>\n<body>\n"
         << "<h2>Capture density &mdash; zoom preset " << zoom_preset_name(config.zoom)
         << "</h2>\n";

    html << "<div class=\"axis\">lat " << fmt_deg(grid.bounds.max_lat) << "</div>\n";
    html << "<div class=\"map\" style=\"width:" << display_w << "px;height:" << display_h
         << "px\">\n"
         << "<img alt=\"heat overlay\" src=\"data:image/png;base64," << png_b64 << "\">\n"
         << "</div>\n";
    html << "<div class=\"axis\">lat " << fmt_deg(grid.bounds.min_lat) << " &nbsp;|&nbsp; lon "
         << fmt_deg(grid.bounds.min_lon) << " &rarr; " << fmt_deg(grid.bounds.max_lon)
         << "</div>\n";

    html << "<div class=\"legend\"><b>intensity</b><br>\n";
    struct LegendStop {
        double t;
        const char* label;
    };
    static constexpr LegendStop stops[] = {
        {0.0, "0.00"}, {0.25, "0.25"}, {0.50, "0.50"}, {0.75, "0.75"}, {1.0, "1.00"},
    };
    for (const auto& stop : stops) {
        Rgba c = ramp_color(stop.t);
        int alpha = static_cast<int>(100 * (stop.t == 0.0 ? 0.0 : config.opacity * stop.t));
        html << "<span><span class=\"swatch\" style=\"background:rgb(" << int(c.r) << ","
             << int(c.g) << "," << int(c.b) << ");opacity:" << (stop.t == 0.0 ? 0.0 : 1.0)
             << "\"></span>" << stop.label << " (&alpha;" << alpha << "%)</span>\n";
    }
    html << "</div>\n";

    html << "<table class=\"meta\">\n"
         << "<tr><td>grid</td><td>" << grid.cols << " &times; " << grid.rows
         << " cells</td></tr>\n"
         << "<tr><td>cell size</td><td>" << grid.cell_size_m << " m</td></tr>\n"
         << "<tr><td>blur radius</td><td>" << config.blur_radius_m << " m</td></tr>\n"
         << "<tr><td>opacity</td><td>" << config.opacity << "</td></tr>\n"
         << "<tr><td>kernel mass</td><td>" << grid.kernel_mass << "</td></tr>\n"
         << "<tr><td>max raw weight</td><td>" << grid.max_raw << "</td></tr>\n"
         << "</table>\n</body>\n</html>\n";
    return html.str();
}

}  // namespace smarttrap::heatmap
