// Command-line front end over the smarttrap C API.
//
// Subcommands: detect, gen-scene, run-trap, simulate-round, serve, heatmap.
// Exit codes: 0 success, 1 operational failure, 2 input validation failure.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smarttrap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitValidation = 2;

int exit_code_for(st_status status) {
    switch (status) {
        case ST_OK: return kExitOk;
        case ST_ERR_INVALID_ARGUMENT:
        case ST_ERR_VALIDATION:
        case ST_ERR_PARSE: return kExitValidation;
        default: return kExitOperational;
    }
}

int fail(st_status status) {
    std::cerr << "error (" << st_status_name(status) << "): " << st_last_error() << "\n";
    return exit_code_for(status);
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

volatile std::sig_atomic_t g_stop_requested = 0;

void handle_stop(int) {
    g_stop_requested = 1;
}

struct DetectArgs {
    std::string input;
    int threshold = 45;
    int se_size = 3;
    int min_px = 10;
    int max_px = 60;
    std::string annotate_out;
};

int cmd_detect(const DetectArgs& args) {
    st_image* frame = nullptr;
    if (st_status s = st_image_read_ppm(args.input.c_str(), &frame)) return fail(s);
    std::unique_ptr<st_image, decltype(&st_image_free)> frame_guard(frame, st_image_free);

    st_detect_params params;
    st_detect_params_defaults(&params);
    params.threshold = args.threshold;
    params.se_size = args.se_size;
    params.min_px = args.min_px;
    params.max_px = args.max_px;

    st_detection* det = nullptr;
    if (st_status s = st_detect_frame(frame, &params, &det)) return fail(s);
    std::unique_ptr<st_detection, decltype(&st_detection_free)> det_guard(det,
                                                                          st_detection_free);

    std::cout << "cbb=" << st_detection_cbb_count(det)
              << " unknown=" << st_detection_unknown_count(det) << "\n";

    if (!args.annotate_out.empty()) {
        st_image* annotated = nullptr;
        if (st_status s = st_annotate_frame(frame, det, &annotated)) return fail(s);
        std::unique_ptr<st_image, decltype(&st_image_free)> ann_guard(annotated, st_image_free);
        if (st_status s = st_image_write_ppm(annotated, args.annotate_out.c_str())) {
            return fail(s);
        }
    }
    return kExitOk;
}

struct GenSceneArgs {
    std::string spec_path;
    bool demo = false;
    std::string out;
};

int cmd_gen_scene(const GenSceneArgs& args) {
    st_scene* scene = nullptr;
    st_status s = args.demo ? st_scene_from_text(st_scene_demo_text(), &scene)
                            : st_scene_from_file(args.spec_path.c_str(), &scene);
    if (s) return fail(s);
    std::unique_ptr<st_scene, decltype(&st_scene_free)> guard(scene, st_scene_free);

    if (!args.out.empty()) {
        if (st_status w = st_image_write_ppm(st_scene_image(scene), args.out.c_str())) {
            return fail(w);
        }
    }
    std::cout << "truth: cbb=" << st_scene_truth_cbb(scene)
              << " unknown=" << st_scene_truth_unknown(scene) << "\n";
    return kExitOk;
}

struct RunTrapArgs {
    std::string frames_dir;
    std::string endpoint;
    std::string config_path;
    std::string log_out;
};

int cmd_run_trap(const RunTrapArgs& args) {
    st_trap_run_params params{};
    params.frames_dir = args.frames_dir.c_str();
    params.endpoint = args.endpoint.empty() ? nullptr : args.endpoint.c_str();
    params.config_path = args.config_path.empty() ? nullptr : args.config_path.c_str();

    st_trap_run* run = nullptr;
    if (st_status s = st_trap_run_execute(&params, &run)) return fail(s);
    std::unique_ptr<st_trap_run, decltype(&st_trap_run_free)> guard(run, st_trap_run_free);

    if (!args.log_out.empty()) {
        char* log = nullptr;
        if (st_status s = st_trap_run_log_ndjson(run, &log)) return fail(s);
        std::ofstream out(args.log_out, std::ios::binary | std::ios::trunc);
        out << log;
        st_string_free(log);
        if (!out) {
            std::cerr << "error: cannot write '" << args.log_out << "'\n";
            return kExitOperational;
        }
    }

    size_t pending = st_trap_run_pending(run);
    std::cout << "messages=" << st_trap_run_message_total(run);
    if (!args.endpoint.empty()) {
        std::cout << " delivered=" << st_trap_run_delivered(run) << " pending=" << pending
                  << " dropped=" << st_trap_run_dropped(run);
    }
    std::cout << "\n";
    if (!args.endpoint.empty() && pending > 0) {
        std::cerr << "warning: " << pending << " message(s) still undelivered\n";
        return kExitOperational;
    }
    return kExitOk;
}

struct SimulateRoundArgs {
    std::string scenario_path;
    bool demo = false;
    std::string endpoint;
    std::string messages_out;
};

int cmd_simulate_round(const SimulateRoundArgs& args) {
    const char* endpoint = args.endpoint.empty() ? nullptr : args.endpoint.c_str();
    st_round* round = nullptr;
    st_status s = args.demo
                      ? st_round_simulate_text(st_round_demo_scenario_text(), endpoint, &round)
                      : st_round_simulate(args.scenario_path.c_str(), endpoint, &round);
    if (s) return fail(s);
    std::unique_ptr<st_round, decltype(&st_round_free)> guard(round, st_round_free);

    if (!args.messages_out.empty()) {
        char* text = nullptr;
        if (st_status w = st_round_messages_ndjson(round, &text)) return fail(w);
        std::ofstream out(args.messages_out, std::ios::binary | std::ios::trunc);
        out << text;
        st_string_free(text);
        if (!out) {
            std::cerr << "error: cannot write '" << args.messages_out << "'\n";
            return kExitOperational;
        }
    }

    std::cout << "insects=" << st_round_insect_total(round)
              << " captured=" << st_round_captured(round)
              << " messages=" << st_round_message_total(round);
    if (!args.endpoint.empty()) {
        std::cout << " delivered=" << st_round_delivered(round)
                  << " pending=" << st_round_pending(round);
    }
    std::cout << "\n";
    if (!args.endpoint.empty() && st_round_pending(round) > 0) {
        return kExitOperational;
    }
    return kExitOk;
}

struct ServeArgs {
    std::string listen;
    std::string data_dir;
    bool no_fsync = false;
};

int cmd_serve(const ServeArgs& args) {
    st_service* service = nullptr;
    if (st_status s = st_service_start(args.listen.c_str(), args.data_dir.c_str(),
                                       args.no_fsync ? 0 : 1, &service)) {
        return fail(s);
    }
    std::unique_ptr<st_service, decltype(&st_service_free)> guard(service, st_service_free);

    std::signal(SIGINT, handle_stop);
    std::signal(SIGTERM, handle_stop);
    std::cout << "listening on port " << st_service_port(service) << ", data dir '"
              << args.data_dir << "' (" << st_service_store_size(service)
              << " records loaded)\n";
    while (!g_stop_requested) {
        struct timespec ts{0, 100 * 1000 * 1000};
        nanosleep(&ts, nullptr);
    }
    std::cout << "shutting down\n";
    if (st_status s = st_service_stop(service)) return fail(s);
    return kExitOk;
}

struct HeatmapArgs {
    std::string source;
    std::vector<std::string> zooms;
    double blur_m = 10.0;
    double opacity = 0.6;
    std::string out_dir;
    std::vector<double> bounds;
};

int cmd_heatmap(const HeatmapArgs& args) {
    std::vector<std::string> zooms = args.zooms;
    if (zooms.empty()) zooms = {"z13", "z14", "z15", "z16"};

    for (const std::string& zoom : zooms) {
        st_heatmap_params params;
        st_heatmap_params_defaults(&params);
        params.zoom = zoom.c_str();
        params.blur_m = args.blur_m;
        params.opacity = args.opacity;
        if (!args.bounds.empty()) {
            params.has_bounds = 1;
            params.min_lon = args.bounds[0];
            params.min_lat = args.bounds[1];
            params.max_lon = args.bounds[2];
            params.max_lat = args.bounds[3];
        }

        st_heatmap* map = nullptr;
        if (st_status s = st_heatmap_build(args.source.c_str(), &params, &map)) return fail(s);
        std::unique_ptr<st_heatmap, decltype(&st_heatmap_free)> guard(map, st_heatmap_free);

        if (st_heatmap_nonzero_cells(map) == 0) {
            std::cerr << "warning: no captures in source; " << zoom
                      << " artifacts will be empty\n";
        }
        const std::string base = args.out_dir + "/heatmap_" + zoom;
        if (st_status s = st_heatmap_write_png(map, (base + ".png").c_str())) return fail(s);
        if (st_status s = st_heatmap_write_geojson(map, (base + ".geojson").c_str())) {
            return fail(s);
        }
        if (st_status s = st_heatmap_write_html(map, (base + ".html").c_str())) return fail(s);
        std::cout << zoom << ": wrote " << base << ".{png,geojson,html}\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smart insect trap toolkit"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    auto* detect = app.add_subcommand("detect", "count insects in a PPM frame");
    detect->add_option("--input", detect_args.input, "input PPM (P6) frame")->required();
    detect->add_option("--threshold", detect_args.threshold, "binarization gray threshold");
    detect->add_option("--se-size", detect_args.se_size, "denoise kernel side (odd)");
    detect->add_option("--min", detect_args.min_px, "minimum target box side");
    detect->add_option("--max", detect_args.max_px, "maximum target box side");
    detect->add_option("--annotate", detect_args.annotate_out, "write annotated PPM here");

    GenSceneArgs gen_args;
    auto* gen = app.add_subcommand("gen-scene", "render a ground-truthed synthetic frame");
    auto* gen_spec = gen->add_option("--spec", gen_args.spec_path, "scene spec file");
    gen->add_flag("--demo", gen_args.demo, "use the bundled demonstration scene");
    gen->add_option("--out", gen_args.out, "write the frame PPM here");
    gen_spec->excludes("--demo");

    RunTrapArgs run_args;
    auto* run = app.add_subcommand("run-trap", "run the trap loop over recorded frames");
    run->add_option("--frames", run_args.frames_dir, "directory of *.ppm frames")->required();
    run->add_option("--endpoint", run_args.endpoint,
                    "ingest service base URL (env SMARTTRAP_ENDPOINT)");
    run->add_option("--config", run_args.config_path, "smarttrap-config file");
    run->add_option("--log", run_args.log_out, "write the run log (NDJSON) here");

    SimulateRoundArgs round_args;
    auto* round = app.add_subcommand("simulate-round", "simulate a plantation round");
    auto* round_scn = round->add_option("--scenario", round_args.scenario_path, "scenario file");
    round->add_flag("--demo", round_args.demo, "use the bundled demonstration scenario");
    round->add_option("--endpoint", round_args.endpoint,
                      "ingest service base URL (env SMARTTRAP_ENDPOINT)");
    round->add_option("--out", round_args.messages_out, "write capture messages (NDJSON) here");
    round_scn->excludes("--demo");

    ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "run the capture ingest service");
    serve->add_option("--listen", serve_args.listen, "host:port (default 127.0.0.1:8080)")
        ->default_val("127.0.0.1:8080");
    serve->add_option("--data", serve_args.data_dir, "data directory (env SMARTTRAP_DATA_DIR)");
    serve->add_flag("--no-fsync", serve_args.no_fsync, "skip fsync after each append");

    HeatmapArgs heat_args;
    auto* heat = app.add_subcommand("heatmap", "render capture-density artifacts");
    heat->add_option("--source", heat_args.source, "service URL or record log file")->required();
    heat->add_option("--zoom", heat_args.zooms, "zoom presets (z13..z16; default all)");
    heat->add_option("--blur", heat_args.blur_m, "blur radius in meters");
    heat->add_option("--opacity", heat_args.opacity, "overlay opacity in [0,1]");
    heat->add_option("--out", heat_args.out_dir, "output directory")->default_val(".");
    heat->add_option("--bounds", heat_args.bounds, "minLon minLat maxLon maxLat")
        ->expected(4);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    if (detect->parsed()) return cmd_detect(detect_args);
    if (gen->parsed()) {
        if (!gen_args.demo && gen_args.spec_path.empty()) {
            std::cerr << "error: gen-scene needs --spec or --demo\n";
            return kExitValidation;
        }
        return cmd_gen_scene(gen_args);
    }
    if (run->parsed()) {
        if (run_args.endpoint.empty()) run_args.endpoint = env_or("SMARTTRAP_ENDPOINT", "");
        return cmd_run_trap(run_args);
    }
    if (round->parsed()) {
        if (!round_args.demo && round_args.scenario_path.empty()) {
            std::cerr << "error: simulate-round needs --scenario or --demo\n";
            return kExitValidation;
        }
        if (round_args.endpoint.empty()) round_args.endpoint = env_or("SMARTTRAP_ENDPOINT", "");
        return cmd_simulate_round(round_args);
    }
    if (serve->parsed()) {
        if (serve_args.data_dir.empty()) {
            serve_args.data_dir = env_or("SMARTTRAP_DATA_DIR", "");
        }
        if (serve_args.data_dir.empty()) {
            std::cerr << "error: serve needs --data or SMARTTRAP_DATA_DIR\n";
            return kExitValidation;
        }
        return cmd_serve(serve_args);
    }
    if (heat->parsed()) return cmd_heatmap(heat_args);
    return kExitValidation;
}
