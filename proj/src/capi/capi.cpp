#include "smarttrap.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "app/runner.hpp"
#include "common/error.hpp"
#include "detection/detector.hpp"
#include "heatmap/export_fmt.hpp"
#include "heatmap/grid.hpp"
#include "heatmap/render.hpp"
#include "imaging/netpbm.hpp"
#include "simkit/field.hpp"
#include "simkit/scene.hpp"
#include "telemetry/service.hpp"

using namespace smarttrap;

namespace {

thread_local std::string g_last_error;

st_status set_error(st_status status, const std::string& what) {
    g_last_error = what;
    return status;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
st_status guarded(Fn&& fn) {
    try {
        fn();
        return ST_OK;
    } catch (const ValidationError& e) {
        return set_error(ST_ERR_VALIDATION, e.what());
    } catch (const ParseError& e) {
        return set_error(ST_ERR_PARSE, e.what());
    } catch (const IoError& e) {
        return set_error(ST_ERR_IO, e.what());
    } catch (const StateError& e) {
        return set_error(ST_ERR_STATE, e.what());
    } catch (const std::exception& e) {
        return set_error(ST_ERR_INTERNAL, e.what());
    }
}

st_status require(bool ok, const char* what) {
    return ok ? ST_OK : set_error(ST_ERR_INVALID_ARGUMENT, what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct st_image {
    imaging::RgbImage img;
};

struct st_detection {
    detection::DetectionResult result;
};

struct st_scene {
    st_image image;
    int truth_cbb = 0;
    int truth_unknown = 0;
};

struct st_trap_run {
    app::TrapRunResult result;
};

struct st_round {
    app::RoundRunResult result;
};

struct st_service {
    std::unique_ptr<telemetry::CaptureStore> store;
    std::unique_ptr<telemetry::IngestService> service;
};

struct st_heatmap {
    heatmap::HeatGrid grid;
    heatmap::RenderConfig config;
};

namespace {

detection::DetectParams to_detect_params(const st_detect_params* params) {
    detection::DetectParams d;
    if (params) {
        if (params->threshold < 0 || params->threshold > 255) {
            throw ValidationError("threshold must be in [0, 255]");
        }
        d.threshold = static_cast<std::uint8_t>(params->threshold);
        d.se_size = params->se_size;
        d.range = {params->min_px, params->max_px};
    }
    d.range.validate();
    imaging::StructuringElement::square(d.se_size);
    return d;
}

st_scene* make_scene(const simkit::SceneSpec& spec) {
    simkit::Scene scene = simkit::generate_scene(spec);
    auto* out = new st_scene;
    out->image.img = std::move(scene.image);
    out->truth_cbb = scene.truth_cbb;
    out->truth_unknown = scene.truth_unknown;
    return out;
}

st_round* make_round(const simkit::FieldScenario& scenario, const char* endpoint) {
    app::RoundRunResult result =
        app::run_round(scenario, app::default_settings(), endpoint ? endpoint : "");
    return new st_round{std::move(result)};
}

}  // namespace

extern "C" {

const char* st_status_name(st_status status) {
    switch (status) {
        case ST_OK: return "ok";
        case ST_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case ST_ERR_VALIDATION: return "validation";
        case ST_ERR_PARSE: return "parse";
        case ST_ERR_IO: return "io";
        case ST_ERR_TRANSPORT: return "transport";
        case ST_ERR_STATE: return "state";
        case ST_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* st_last_error(void) {
    return g_last_error.c_str();
}

void st_string_free(char* s) {
    std::free(s);
}

/* --- images ---------------------------------------------------------- */

st_status st_image_read_ppm(const char* path, st_image** out) {
    if (auto s = require(path && out, "st_image_read_ppm: null argument")) return s;
    return guarded([&] { *out = new st_image{imaging::read_ppm_file(path)}; });
}

st_status st_image_write_ppm(const st_image* img, const char* path) {
    if (auto s = require(img && path, "st_image_write_ppm: null argument")) return s;
    return guarded([&] { imaging::write_ppm_file(img->img, path); });
}

int st_image_width(const st_image* img) {
    return img ? img->img.width() : 0;
}

int st_image_height(const st_image* img) {
    return img ? img->img.height() : 0;
}

void st_image_free(st_image* img) {
    delete img;
}

/* --- detection -------------------------------------------------------- */

void st_detect_params_defaults(st_detect_params* params) {
    if (!params) return;
    detection::DetectParams d;
    params->threshold = d.threshold;
    params->se_size = d.se_size;
    params->min_px = d.range.min_px;
    params->max_px = d.range.max_px;
}

st_status st_detect_frame(const st_image* frame, const st_detect_params* params,
                          st_detection** out) {
    if (auto s = require(frame && out, "st_detect_frame: null argument")) return s;
    return guarded([&] {
        *out = new st_detection{detection::detect(frame->img, to_detect_params(params))};
    });
}

int st_detection_cbb_count(const st_detection* det) {
    return det ? det->result.cbb_count : 0;
}

int st_detection_unknown_count(const st_detection* det) {
    return det ? det->result.unknown_count : 0;
}

int st_detection_total(const st_detection* det) {
    return det ? static_cast<int>(det->result.detections.size()) : 0;
}

st_status st_detection_box(const st_detection* det, int index, int* x, int* y, int* w, int* h,
                           int* is_cbb) {
    if (auto s = require(det != nullptr, "st_detection_box: null handle")) return s;
    if (index < 0 || index >= static_cast<int>(det->result.detections.size())) {
        return set_error(ST_ERR_INVALID_ARGUMENT, "st_detection_box: index out of range");
    }
    const auto& d = det->result.detections[static_cast<size_t>(index)];
    if (x) *x = d.bbox.x;
    if (y) *y = d.bbox.y;
    if (w) *w = d.bbox.w;
    if (h) *h = d.bbox.h;
    if (is_cbb) *is_cbb = d.klass == detection::Klass::Cbb ? 1 : 0;
    return ST_OK;
}

st_status st_annotate_frame(const st_image* frame, const st_detection* det, st_image** out) {
    if (auto s = require(frame && det && out, "st_annotate_frame: null argument")) return s;
    return guarded([&] { *out = new st_image{detection::annotate(frame->img, det->result)}; });
}

void st_detection_free(st_detection* det) {
    delete det;
}

/* --- scenes ----------------------------------------------------------- */

st_status st_scene_from_file(const char* path, st_scene** out) {
    if (auto s = require(path && out, "st_scene_from_file: null argument")) return s;
    return guarded([&] { *out = make_scene(simkit::parse_scene_file(path)); });
}

st_status st_scene_from_text(const char* text, st_scene** out) {
    if (auto s = require(text && out, "st_scene_from_text: null argument")) return s;
    return guarded([&] { *out = make_scene(simkit::parse_scene_text(text)); });
}

const char* st_scene_demo_text(void) {
    static const std::string text = simkit::demo_scene_text();
    return text.c_str();
}

const st_image* st_scene_image(const st_scene* scene) {
    return scene ? &scene->image : nullptr;
}

int st_scene_truth_cbb(const st_scene* scene) {
    return scene ? scene->truth_cbb : 0;
}

int st_scene_truth_unknown(const st_scene* scene) {
    return scene ? scene->truth_unknown : 0;
}

void st_scene_free(st_scene* scene) {
    delete scene;
}

/* --- trap runs --------------------------------------------------------- */

st_status st_trap_run_execute(const st_trap_run_params* params, st_trap_run** out) {
    if (auto s = require(params && out && params->frames_dir,
                         "st_trap_run_execute: null argument")) {
        return s;
    }
    return guarded([&] {
        app::TrapRunOptions options;
        options.frame_paths = app::list_frame_files(params->frames_dir);
        if (params->endpoint) options.endpoint = params->endpoint;
        if (params->config_path) options.settings = app::load_settings_file(params->config_path);
        *out = new st_trap_run{app::run_trap(options)};
    });
}

st_status st_trap_run_log_ndjson(const st_trap_run* run, char** out) {
    if (auto s = require(run && out, "st_trap_run_log_ndjson: null argument")) return s;
    return guarded([&] { *out = dup_string(run->result.log.to_ndjson()); });
}

int st_trap_run_message_total(const st_trap_run* run) {
    return run ? static_cast<int>(run->result.messages.size()) : 0;
}

uint64_t st_trap_run_delivered(const st_trap_run* run) {
    return run ? run->result.stats.delivered + run->result.stats.duplicates : 0;
}

uint64_t st_trap_run_dropped(const st_trap_run* run) {
    return run ? run->result.stats.dropped : 0;
}

size_t st_trap_run_pending(const st_trap_run* run) {
    return run ? run->result.pending : 0;
}

void st_trap_run_free(st_trap_run* run) {
    delete run;
}

/* --- field rounds ------------------------------------------------------- */

st_status st_round_simulate(const char* scenario_path, const char* endpoint, st_round** out) {
    if (auto s = require(scenario_path && out, "st_round_simulate: null argument")) return s;
    return guarded(
        [&] { *out = make_round(simkit::parse_scenario_file(scenario_path), endpoint); });
}

st_status st_round_simulate_text(const char* scenario_text, const char* endpoint,
                                 st_round** out) {
    if (auto s = require(scenario_text && out, "st_round_simulate_text: null argument")) return s;
    return guarded(
        [&] { *out = make_round(simkit::parse_scenario_text(scenario_text), endpoint); });
}

const char* st_round_demo_scenario_text(void) {
    static const std::string text = simkit::demo_scenario_text();
    return text.c_str();
}

int st_round_message_total(const st_round* round) {
    return round ? static_cast<int>(round->result.round.messages.size()) : 0;
}

int st_round_captured(const st_round* round) {
    return round ? round->result.round.captured : 0;
}

int st_round_insect_total(const st_round* round) {
    return round ? round->result.round.total_insects : 0;
}

uint64_t st_round_delivered(const st_round* round) {
    return round ? round->result.stats.delivered + round->result.stats.duplicates : 0;
}

size_t st_round_pending(const st_round* round) {
    return round ? round->result.pending : 0;
}

st_status st_round_messages_ndjson(const st_round* round, char** out) {
    if (auto s = require(round && out, "st_round_messages_ndjson: null argument")) return s;
    return guarded([&] {
        std::string text;
        for (const auto& msg : round->result.round.messages) {
            text += telemetry::encode_capture_message(msg);
            text += '\n';
        }
        *out = dup_string(text);
    });
}

void st_round_free(st_round* round) {
    delete round;
}

/* --- service ------------------------------------------------------------ */

st_status st_service_start(const char* listen_addr, const char* data_dir, int fsync_on_append,
                           st_service** out) {
    if (auto s = require(listen_addr && data_dir && out, "st_service_start: null argument")) {
        return s;
    }
    return guarded([&] {
        auto handle = std::make_unique<st_service>();
        auto [host, port] = telemetry::parse_listen_address(listen_addr);
        handle->store =
            std::make_unique<telemetry::CaptureStore>(data_dir, fsync_on_append != 0);
        handle->service =
            std::make_unique<telemetry::IngestService>(*handle->store, host, port);
        handle->service->start();
        *out = handle.release();
    });
}

int st_service_port(const st_service* service) {
    return service && service->service ? service->service->port() : -1;
}

size_t st_service_store_size(const st_service* service) {
    return service && service->store ? service->store->size() : 0;
}

st_status st_service_stop(st_service* service) {
    if (auto s = require(service != nullptr, "st_service_stop: null handle")) return s;
    return guarded([&] { service->service->stop(); });
}

void st_service_free(st_service* service) {
    delete service;
}

/* --- heatmaps ------------------------------------------------------------ */

void st_heatmap_params_defaults(st_heatmap_params* params) {
    if (!params) return;
    heatmap::RenderConfig cfg;
    params->zoom = "z15";
    params->blur_m = cfg.blur_radius_m;
    params->opacity = cfg.opacity;
    params->has_bounds = 0;
    params->min_lon = params->min_lat = params->max_lon = params->max_lat = 0.0;
}

st_status st_heatmap_build(const char* source, const st_heatmap_params* params,
                           st_heatmap** out) {
    if (auto s = require(source && out, "st_heatmap_build: null argument")) return s;
    return guarded([&] {
        heatmap::RenderConfig cfg;
        std::optional<GeoBounds> bounds;
        if (params) {
            if (params->zoom) {
                auto zoom = heatmap::zoom_preset_from_name(params->zoom);
                if (!zoom) {
                    throw ValidationError(std::string("unknown zoom preset '") + params->zoom +
                                          "'");
                }
                cfg.zoom = *zoom;
            }
            cfg.blur_radius_m = params->blur_m;
            cfg.opacity = params->opacity;
            if (params->has_bounds) {
                bounds = GeoBounds{params->min_lon, params->min_lat, params->max_lon,
                                   params->max_lat};
            }
        }
        auto messages = app::load_messages(source);
        auto* handle = new st_heatmap;
        handle->config = cfg;
        handle->grid = heatmap::aggregate(messages, cfg, bounds);
        *out = handle;
    });
}

st_status st_heatmap_write_png(const st_heatmap* map, const char* path) {
    if (auto s = require(map && path, "st_heatmap_write_png: null argument")) return s;
    return guarded([&] {
        heatmap::write_png_file(heatmap::render_raster(map->grid, map->config), path);
    });
}

st_status st_heatmap_write_geojson(const st_heatmap* map, const char* path) {
    if (auto s = require(map && path, "st_heatmap_write_geojson: null argument")) return s;
    return guarded([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(std::string("cannot write '") + path + "'");
        out << heatmap::export_geojson(map->grid);
    });
}

st_status st_heatmap_write_html(const st_heatmap* map, const char* path) {
    if (auto s = require(map && path, "st_heatmap_write_html: null argument")) return s;
    return guarded([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(std::string("cannot write '") + path + "'");
        out << heatmap::export_html(map->grid, map->config,
                                    heatmap::render_raster(map->grid, map->config));
    });
}

size_t st_heatmap_nonzero_cells(const st_heatmap* map) {
    return map ? map->grid.nonzero_cells() : 0;
}

double st_heatmap_total_raw(const st_heatmap* map) {
    if (!map) return 0.0;
    double total = 0.0;
    for (double v : map->grid.raw) total += v;
    return total;
}

double st_heatmap_kernel_mass(const st_heatmap* map) {
    return map ? map->grid.kernel_mass : 0.0;
}

void st_heatmap_free(st_heatmap* map) {
    delete map;
}

} /* extern "C" */
